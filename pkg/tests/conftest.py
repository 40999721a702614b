import functools

from hochschild.algebra import dual_numbers
from hochschild.dihedral import dihedral_resolution
from hochschild.fields import Field
from hochschild.resolutions import compute_contraction, dual_numbers_resolution


@functools.lru_cache(maxsize=None)
def dihedral(k, p, depth=6):
    return dihedral_resolution(k, Field(p), depth)


@functools.lru_cache(maxsize=None)
def dual(p, depth=6):
    res = dual_numbers_resolution(dual_numbers(Field(p)), depth)
    return res, compute_contraction(res)


def fixture(name, p, depth=6):
    if name == "dual":
        return dual(p, depth)
    return dihedral(int(name.split(":")[1]), p, depth)


ACCEPTANCE = []


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for line in sorted(ACCEPTANCE):
        terminalreporter.write_line(line)
