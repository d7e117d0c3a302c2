import sys
from pathlib import Path

from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

sys.path.insert(0, str(Path(__file__).parent))

from leansset.builders import boundary, delta, horn, jnerve, nerve, point, simplicial_complex, spine
from leansset.category import zoo

settings.register_profile(
    "default", deadline=None, max_examples=40, suppress_health_check=[HealthCheck.too_slow, HealthCheck.data_too_large]
)
settings.load_profile("default")

ZOO = zoo()
# categories without non-identity isomorphisms
RIGID = ["[0]", "1", "[1]", "[2]", "disc2", "disc3", "V", "Lambda", "[1]+pt", "kronecker", "idem", "leftzero"]
GROUPS = ["1", "Z/2", "Z/3", "Z/2xZ/2"]


@st.composite
def complexes(draw, max_n: int = 3):
    """A random sub-complex of a simplex, given by random facets."""
    n = draw(st.integers(0, max_n))
    verts = list(range(n + 1))
    facets = draw(
        st.lists(st.sets(st.sampled_from(verts), min_size=1), min_size=1, max_size=4).map(
            lambda fs: [sorted(f) for f in fs]
        )
    )
    used = sorted({v for f in facets for v in f})
    relabel = {v: k for k, v in enumerate(used)}
    return simplicial_complex(len(used) - 1, [[relabel[v] for v in f] for f in facets])


def standard_finite():
    return [delta(0), delta(1), delta(2), boundary(1), boundary(2), horn(2, 0), horn(2, 1), spine(2), point()]


def standard_lean():
    return [nerve(ZOO[k]) for k in ("[1]", "Z/2", "Z/3", "disc2", "V")] + [jnerve(0), jnerve(1), jnerve(2)]


lean_objects = st.sampled_from(range(8)).map(lambda k: standard_lean()[k])
categories = st.sampled_from(sorted(ZOO))


# one line per acceptance criterion, filled in by test_acceptance and echoed after the run
ACCEPTANCE: dict[int, str] = {}


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for k in sorted(ACCEPTANCE):
            terminalreporter.write_line(ACCEPTANCE[k])
