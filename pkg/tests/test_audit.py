from fractions import Fraction

import pytest

from treewalk.audit import (
    DISCREPANCY,
    OUT_OF_RANGE,
    VERIFIED,
    audit_formula,
    audit_proposition_barycenter,
    audit_theorem_global,
    audit_theorem_max,
    audit_theorem_min,
)
from treewalk.errors import CapExceeded, UnknownClaim
from treewalk.families import path_tree
from treewalk.simulate import simulate_hitting
from treewalk.trees import canonical_form


def _values(report):
    return [(w.value_num, w.value_den) for w in report.witnesses]


def test_theorem_min_verified_cases():
    assert audit_theorem_min(8, 4).status == VERIFIED
    rep = audit_theorem_min(5, 4)
    assert rep.status == VERIFIED and _values(rep) == [(5, 2)]
    # singleton class: only the path has diameter n-1
    assert audit_theorem_min(6, 5).status == VERIFIED


def test_theorem_max_verified_cases():
    assert audit_theorem_max(8, 4).status == VERIFIED
    rep = audit_theorem_max(5, 3)
    assert rep.status == VERIFIED and _values(rep) == [(3, 2)]
    rep = audit_theorem_max(7, 2)
    assert rep.status == VERIFIED and _values(rep) == [(1, 2)]


def test_theorem_global_small_orders():
    rep = audit_theorem_global(3)
    assert rep.status == VERIFIED and _values(rep)[0] == (1, 2)
    rep = audit_theorem_global(7)
    assert rep.status == VERIFIED and _values(rep)[0] == (35, 6)
    rep = audit_theorem_global(8)
    assert rep.status == VERIFIED
    assert canonical_form(path_tree(8)).decode("ascii") == rep.witnesses[0].canonical


def test_formula_flags_star_scaling():
    rep = audit_formula("jmax_star_printed", 3, 20)
    assert rep.status == DISCREPANCY
    assert rep.params["first_failure"] == {"n": 3}
    assert _values(rep) == [(5, 1), (10, 1)]


def test_formula_flags_path_expansion():
    rep = audit_formula("jmax_path_expanded_printed", 3, 20)
    assert rep.status == DISCREPANCY
    assert rep.params["first_failure"] == {"n": 3}
    assert _values(rep) == [(34, 1), (10, 1)]


def test_formula_flags_dbroom_oe_denominator():
    rep = audit_formula("bestmeet_dbroom_oe_printed", 3, 15)
    assert rep.status == DISCREPANCY
    assert rep.params["first_failure"] == {"n": 7, "d": 6}
    assert (rep.witnesses[0].value_num, rep.witnesses[0].value_den) == (17, 2)
    assert (rep.witnesses[1].value_num, rep.witnesses[1].value_den) == (35, 6)


def test_formula_flags_short_broom_bestmeet():
    rep = audit_formula("bestmeet_bn_printed", 5, 15)
    assert rep.status == DISCREPANCY
    assert rep.params["first_failure"] == {"n": 5}
    rep = audit_formula("bestmeet_bn_corrected", 5, 15)
    assert rep.status == VERIFIED


def test_formula_flags_aggregated_maximum_for_odd_orders():
    rep = audit_formula("jmin_dnd_max", 3, 11)
    assert rep.status == DISCREPANCY
    assert rep.params["first_failure"] == {"n": 9}
    assert _values(rep) == [(169, 1), (168, 1)]


def test_formula_verified_families():
    assert audit_formula("jmax_broom", 4, 40).status == VERIFIED
    assert audit_formula("jmax_path", 2, 60).status == VERIFIED
    assert audit_formula("bestmeet_lever", 3, 30).status == VERIFIED
    assert audit_formula("jmin_dbroom_oo", 3, 25).status == VERIFIED
    assert audit_formula("bestmeet_dbroom_oe", 3, 25).status == VERIFIED
    assert audit_formula("delta_minus_broom", 4, 30).status == VERIFIED
    assert audit_formula("tmeet_star", 2, 40).status == VERIFIED


def test_formula_out_of_range_window():
    rep = audit_formula("bestmeet_bn_printed", 2, 4)
    assert rep.status == OUT_OF_RANGE


def test_formula_unknown_id():
    with pytest.raises(UnknownClaim):
        audit_formula("nonesuch", 3, 5)


def test_proposition_barycenter():
    rep = audit_proposition_barycenter(7)
    assert rep.status == VERIFIED
    assert "23 trees" in rep.notes


def test_cap_exceeded():
    with pytest.raises(CapExceeded):
        audit_proposition_barycenter(12)


def test_simulation_forced_step():
    s = simulate_hitting(path_tree(2), 0, 1, 100, 7)
    assert s.mean == 1 and s.stderr == 0.0 and s.z_score == 0.0


def test_simulation_deterministic_given_seed():
    a = simulate_hitting(path_tree(3), 0, 2, 2000, 42)
    b = simulate_hitting(path_tree(3), 0, 2, 2000, 42)
    assert a == b
    c = simulate_hitting(path_tree(3), 0, 2, 2000, 43)
    assert c.total_steps != a.total_steps


def test_simulation_walk_count_prefix_property():
    # per-walk streams keyed by walk index: a longer run re-produces the
    # shorter run's walks exactly
    a = simulate_hitting(path_tree(3), 0, 2, 1000, 11)
    b = simulate_hitting(path_tree(3), 0, 2, 2000, 11)
    assert b.total_steps >= a.total_steps
    assert abs(float(b.mean) - float(a.mean)) <= 6 * max(a.stderr, 1e-9)


def test_simulation_exact_field():
    s = simulate_hitting(path_tree(3), 0, 2, 500, 5)
    assert s.exact == Fraction(4)
    assert abs(s.z_score) < 6
