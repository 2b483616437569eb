from __future__ import annotations

import pytest

from dseq.errors import BudgetExhausted
from dseq.groups import build_group
from dseq.pipeline import (
    ConstructionCertificate,
    abelian_dsequence,
    batch_check,
    catalog_specs,
    construct_dsequence,
    invariant_factor_lists,
)
from dseq.sequences import verify_d_sequence
from dseq.seqfile import SequenceFile


def recheck(cert: ConstructionCertificate) -> None:
    group = build_group(cert.group)
    out = verify_d_sequence(group, cert.sequence)
    assert out.valid
    assert out.cyclic == cert.cyclic


def test_abelian_z4_route():
    cert = abelian_dsequence([4])
    assert cert.sequence == [0, 1, 3, 2, 2, 3, 1, 0]
    assert [s.op for s in cert.route] == ["double_from_sequencing"]
    recheck(cert)


def test_abelian_z3_goes_through_r_route():
    cert = abelian_dsequence([3])
    assert len(cert.sequence) == 6
    assert [s.op for s in cert.route] == ["double_from_r_sequence"]
    assert cert.fallbacks_used == []
    recheck(cert)


def test_abelian_trivial():
    cert = abelian_dsequence([1])
    assert cert.sequence == [0, 0]
    recheck(cert)


def test_abelian_rejects_bad_factors():
    with pytest.raises(ValueError):
        abelian_dsequence([0])


def test_abelian_desk_scale_sample():
    # full order <= 32 sweep lives in the acceptance suite
    for factors in ([8], [2, 4], [3, 9], [2, 2, 2, 2], [2, 16], [4, 8]):
        cert = abelian_dsequence(factors)
        assert cert.verified and cert.cyclic
        recheck(cert)


def test_construct_z4_by_z3():
    cert = construct_dsequence("Z4", [3])
    assert cert.group == "Z4xZ3"
    assert len(cert.sequence) == 24
    assert cert.cyclic
    assert [s.op for s in cert.route] == [
        "base_sequencing",
        "double_from_sequencing",
        "lift_odd_cyclic",
    ]
    assert cert.fallbacks_used == []
    recheck(cert)


def test_construct_d10_with_cube_falls_back_verified():
    cert = construct_dsequence("D10", [2, 2])
    assert cert.group == "D10xZ2xZ2"
    assert cert.verified
    assert "cube_lift_even_base_unverified" in cert.fallbacks_used
    recheck(cert)


def test_construct_no_search_fallback_for_odd_h():
    # sequenceable N with odd H must not touch any search fallback
    for n_spec in ("Z4", "Z8", "D10"):
        for h in ([3], [9], [3, 5]):
            cert = construct_dsequence(n_spec, h)
            assert cert.fallbacks_used == [], (n_spec, h)
            assert cert.cyclic
            recheck(cert)


def test_construct_odd_times_odd_projection():
    cert = construct_dsequence("Z3", [3])
    assert cert.group == "Z3xZ3"
    assert [s.op for s in cert.route] == ["project_binary_sequencing"]
    recheck(cert)


def test_construct_odd_times_even_pulls_two_power():
    cert = construct_dsequence("Z3", [4])
    assert cert.group == "Z3xZ4"
    assert cert.route[0].op == "base_sequencing"
    assert cert.route[0].detail["base"] == "Z3xZ4"
    recheck(cert)


def test_construct_f21():
    cert = construct_dsequence("F21", [])
    assert cert.group == "F21" and len(cert.sequence) == 42
    assert cert.cyclic
    recheck(cert)


def test_construct_hypothesis_unmet_falls_back():
    cert = construct_dsequence("D6", [])
    assert cert.verified
    assert any("base_not_sequenceable" in fb for fb in cert.fallbacks_used)
    recheck(cert)


def test_construct_rejects_bad_input():
    with pytest.raises(ValueError):
        construct_dsequence("Z4", [0])
    with pytest.raises(ValueError):
        construct_dsequence("NotAGroup", [2])


def test_certificates_are_deterministic():
    a = construct_dsequence("D10", [2, 2, 3])
    b = construct_dsequence("D10", [2, 2, 3])
    assert a.sequence == b.sequence
    assert [s.to_dict() for s in a.route] == [s.to_dict() for s in b.route]
    # a fixed seed is deterministic too, but may pick different free subsets
    c = construct_dsequence("Z4", [4], seed=7)
    d = construct_dsequence("Z4", [4], seed=7)
    assert c.sequence == d.sequence
    recheck(c)


def test_certificate_roundtrip_through_file(tmp_path):
    cert = construct_dsequence("Z4", [2, 2, 3])
    path = tmp_path / "cert.json"
    sf = SequenceFile.from_dict(cert.to_dict())
    sf.write(path)
    loaded = SequenceFile.read(path)
    assert loaded.items == cert.sequence
    assert loaded.group == cert.group
    group = loaded.build_group()
    out = verify_d_sequence(group, loaded.items)
    assert out.valid
    assert loaded.certificate["route"] == [s.to_dict() for s in cert.route]


def test_budget_exhaustion_is_explicit():
    with pytest.raises(BudgetExhausted):
        construct_dsequence("Q8", [2, 2, 2], budget=200)


def test_invariant_factor_lists():
    assert invariant_factor_lists(1) == [[1]]
    assert sorted(invariant_factor_lists(4)) == [[2, 2], [4]]
    assert sorted(invariant_factor_lists(12)) == [[2, 6], [12]]
    for n in range(1, 33):
        for factors in invariant_factor_lists(n):
            prod = 1
            for i, d in enumerate(factors):
                prod *= d
                if i:
                    assert d % factors[i - 1] == 0
            assert prod == n


def test_catalog_specs():
    entries = catalog_specs(8)
    specs = [s for s, _ in entries]
    assert "Q8" in specs and "D6" in specs and "D8" in specs
    assert "F21" not in specs
    assert ("Z2xZ4", True) in entries


def test_batch_check_small():
    report = batch_check(8)
    assert report.all_verified
    by_spec = {e.spec: e for e in report.entries}
    assert by_spec["D6"].status == "verified"
    assert by_spec["Q8"].status == "verified"
    report1 = batch_check(1)
    assert [e.spec for e in report1.entries] == ["Z1"]
    assert report1.all_verified


def test_batch_check_rejects_unknown_family():
    with pytest.raises(ValueError):
        batch_check(8, families=["abelian", "sporadic"])
