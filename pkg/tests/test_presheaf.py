import pytest

from graysq.fincat import FinCat
from graysq.presheaf import (
    DiagramSpec,
    RecognitionError,
    are_isomorphic,
    finite_colimit,
    is_complete,
    is_segal_theta2,
    nerve,
    presheaf_to_twocat,
)
from graysq.shapes import build_globular_sum, parse_gs, recognition_site
from graysq.twocat import are_isomorphic_twocats, coproduct_many, from_fincat


def _build(text):
    return build_globular_sum(parse_gs(text))


def _walking_iso_twocat():
    objects = ["a", "b"]
    arrows = ["ia", "ib", "f", "g"]
    src = {"ia": "a", "ib": "b", "f": "a", "g": "b"}
    tgt = {"ia": "a", "ib": "b", "f": "b", "g": "a"}
    unit = {"a": "ia", "b": "ib"}
    comp = {
        ("ia", "ia"): "ia",
        ("ib", "ib"): "ib",
        ("f", "ia"): "f",
        ("ib", "f"): "f",
        ("g", "ib"): "g",
        ("ia", "g"): "g",
        ("g", "f"): "ia",
        ("f", "g"): "ib",
    }
    return from_fincat(FinCat(objects, arrows, src, tgt, unit, comp))


SITE = recognition_site()


def test_nerve_level_counts_square():
    X = nerve(_build("[1;1]"), SITE)
    assert X.level_counts() == {
        "[0]": 2,
        "[1]": 4,
        "[2]": 6,
        "[1;1]": 5,
        "[1;2]": 6,
        "[2;(1,0)]": 7,
        "[2;(0,1)]": 7,
    }
    X.validate()


def test_nerve_is_segal():
    for text in ("[1]", "[2]", "[1;1]", "[2;(1,0)]"):
        assert is_segal_theta2(nerve(_build(text), SITE))


def test_recognition_round_trip():
    for text in ("[1]", "[2]", "[1;1]", "[1;2]", "[2;(1,0)]"):
        C = _build(text)
        D = presheaf_to_twocat(nerve(C, SITE))
        assert are_isomorphic_twocats(D, C)


def test_recognition_of_coproduct():
    C = coproduct_many([_build("[1]"), _build("[1]")])
    X = nerve(C, SITE)
    assert is_segal_theta2(X)
    assert are_isomorphic_twocats(presheaf_to_twocat(X), C)


def test_completeness_tracks_gauntness():
    assert is_complete(nerve(_build("[1;1]"), SITE))
    assert not is_complete(nerve(_walking_iso_twocat(), SITE))


def test_are_isomorphic():
    X = nerve(_build("[1;1]"), SITE)
    Y = nerve(_build("[1;1]"), SITE)
    assert are_isomorphic(X, Y) is not None
    assert are_isomorphic(X, nerve(_build("[2]"), SITE)) is None


def test_colimit_of_coproduct_diagram():
    N = nerve(_build("[1]"), SITE)
    colim, inj = finite_colimit(DiagramSpec({"a": N, "b": N}, []))
    assert colim.total_size() == 2 * N.total_size()
    colim.validate()
    for a in SITE.objects:
        for e in N.values[a]:
            assert inj["a"][a][e] in set(colim.values[a])
