import pytest

from src.bimould import ExactBackend, EvalBackend
from src.ratfun import canonical_string, ratfun_field
from src.units import (
    FlexionUnit,
    Primary,
    UnitError,
    UnitStatus,
    es_split_defect,
    get_unit,
    neg_pari,
    polar_u,
    polar_v,
    primary,
    push_neutrality_check,
    verify_unit,
)
from tests.helpers import assert_same


def candidate(name, build):
    u1, v1 = ratfun_field(1).gens
    return FlexionUnit(name, build(u1, v1))


@pytest.mark.parametrize("unit", [polar_u(), polar_v(), polar_u().conjugate_unit()])
def test_builtin_units_validate(unit):
    assert verify_unit(unit).status is UnitStatus.IS_UNIT


def test_non_units_are_classified():
    verdict = verify_unit(candidate("linear", lambda u1, v1: u1))
    assert verdict.status is UnitStatus.FAILS_TRIPARTITE
    assert verdict.witness
    assert verify_unit(candidate("shifted", lambda u1, v1: 1 / u1 + 1)).status is UnitStatus.FAILS_PARITY


def test_get_unit_by_name():
    assert get_unit("polar-u").name == "polar-u"
    with pytest.raises(UnitError):
        get_unit("polar-w")


def test_custom_unit_files(tmp_path):
    one_line = tmp_path / "inverse.txt"
    one_line.write_text("# polar in u\n1/u1\n")
    assert get_unit(f"custom:{one_line}").component == polar_u().component

    two_lines = tmp_path / "pair.txt"
    two_lines.write_text("1\nv1\n")
    assert get_unit(f"custom:{two_lines}").component == polar_v().component

    foreign = tmp_path / "foreign.txt"
    foreign.write_text("1/u3\n")
    with pytest.raises(UnitError):
        get_unit(f"custom:{foreign}")

    too_long = tmp_path / "long.txt"
    too_long.write_text("1\nu1\nv1\n")
    with pytest.raises(UnitError):
        get_unit(f"custom:{too_long}")

    not_a_unit = tmp_path / "linear.txt"
    not_a_unit.write_text("u1\n")
    with pytest.raises(UnitError):
        get_unit(f"custom:{not_a_unit}")

    with pytest.raises(UnitError):
        get_unit(f"custom:{tmp_path / 'missing.txt'}")


def test_conjugate_swaps_variables():
    assert canonical_string(polar_u().conjugate) == "1 / (v1)"
    assert polar_u().conjugate_unit().name == "polar-u~"


def test_primary_components():
    backend = ExactBackend(2)
    unit = polar_u()
    assert canonical_string(primary(unit, "ez", backend).component(2)) == "1 / (u1*u2)"
    assert canonical_string(primary(unit, "es", backend).component(2)) == "1 / (u1^2 + u1*u2)"
    assert canonical_string(primary(unit, "oz", backend).component(1)) == "1 / (v1)"
    assert primary(unit, Primary.ES, backend).component(0) == backend.one


@pytest.mark.parametrize("which", [p.value for p in Primary])
def test_closed_forms_match_operator_forms(exact3, which):
    unit = polar_u()
    assert_same(primary(unit, which, exact3), primary(unit, which, exact3, construction="operator"))


def test_primary_rejects_non_units(exact2):
    with pytest.raises(UnitError):
        primary(candidate("linear", lambda u1, v1: u1), "ez", exact2)
    with pytest.raises(ValueError):
        primary(polar_u(), "es", exact2, construction="recursive")


def test_push_neutrality():
    assert push_neutrality_check(polar_u(), 3)
    assert push_neutrality_check(polar_v(), 3)


def test_es_splits_multiplicatively(exact3):
    es = primary(polar_u(), "es", exact3)
    w = exact3.generic(3)
    for i in range(1, 3):
        assert not es_split_defect(es, w, i)


def test_es_is_neg_pari_invariant():
    backend = EvalBackend(3)
    es = primary(polar_u(), "es", backend)
    assert_same(neg_pari(es), es, points=4)
