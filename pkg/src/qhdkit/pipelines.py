"""End-to-end checks for the three families and the matrix group."""
from __future__ import annotations

import os
from functools import lru_cache
from pathlib import Path

from . import matgroup, resgraph
from .polyalg import is_scalar_multiple
from .fpgroup import (
    PermutationModel,
    Presentation,
    Word,
    abelian_invariants,
    b23_presentation,
    check_relator_certificate,
    coset_enumerate,
    group_order,
    load_certificates,
    quotient_by_normal_closure,
    tietze_eliminate,
    verify_homomorphism,
)
from .snf import invariants_order
from .zvk import (
    BraidMonodromyData,
    LineArrangement,
    braid_monodromy_presentation,
    derived_meridians,
    wiring_presentation,
)

DATA_ENV = "QHDKIT_DATA"


def data_dir(override: str | os.PathLike | None = None) -> Path:
    if override:
        return Path(override)
    env = os.environ.get(DATA_ENV)
    return Path(env) if env else resgraph.DATA_DIR


# B23


def b23_kill_rules(p: int) -> dict[str, list[tuple[str, int]]]:
    """Meridians of the curves dropped from the boundary divisor."""
    return {
        "e13": [("P13", 1)],
        "e24": [("P24", 1)],
        "e34": [("P34", 1)],
        f"e3_{p + 1}": [("R3:a1", p + 1), ("R3:a2", 1)],
        "q1": [("P23", 1), ("P23:a3", 1)],
        "q2": [("P14", 1), ("P14:a3", 1)],
    }


@lru_cache(maxsize=None)
def b23_arrangement_group(data: str | None = None) -> tuple[Presentation, dict]:
    arr = LineArrangement.load(data_dir(data) / "arrangement_b23.json")
    return wiring_presentation(arr)


def b23_milnor_group(p: int, data: str | None = None) -> Presentation:
    g, mm = b23_arrangement_group(data)
    rules = b23_kill_rules(p)
    mm = derived_meridians(mm, rules)
    return quotient_by_normal_closure(g, [mm[k] for k in rules])


def b23_maps(p: int, g1: Presentation) -> tuple[list[Word], list[Word]]:
    """Mutually inverse maps between the model group <a, l> and the
    arrangement quotient: a -> a1, l -> l1 and back."""
    q = p + 3
    model = b23_presentation(p)
    forward = [g1.word("a1"), g1.word("l1")]
    back_text = {
        "l1": "l", "l2": f"l*a^{-q}", "l3": f"l*a^{1 - 2 * q}", "l4": f"l*a^{1 - q}",
        "a1": "a", "a2": f"a^{2 - q}", "a3": f"a^{1 - q}",
    }
    back = [model.word(back_text[name]) for name in g1.names]
    return forward, back


def _round_trip(src: PermutationModel, there: list[Word], back: list[Word], ngens: int) -> bool:
    # composite sends generator i to there[i] with back substituted
    return all(
        src.evaluate(there[i].substitute(list(back))) == src.evaluate(Word.gen(i)) for i in range(ngens)
    )


def verify_b23(p: int, data: str | None = None) -> dict:
    model = b23_presentation(p)
    g1 = b23_milnor_group(p, data)
    order = group_order(g1)
    ab = abelian_invariants(g1)
    expected = 4 * (p + 2) * (p + 3)
    model_order = group_order(model)
    a_index = coset_enumerate(model, [model.word("a")]).index
    forward, back = b23_maps(p, g1)
    m_model = PermutationModel.from_presentation(model)
    m_g1 = PermutationModel.from_presentation(g1)
    iso = (
        verify_homomorphism(model, forward, m_g1)
        and verify_homomorphism(g1, back, m_model)
        and _round_trip(m_model, forward, back, model.ngens)
        and _round_trip(m_g1, back, forward, g1.ngens)
    )
    m = p + 2
    mat_iso = matgroup.verify_b23_isomorphism(m)
    bmodel, kept = resgraph.family_model("B23", p, data_dir(data))
    h1 = resgraph.complement_h1(bmodel, kept)
    disc = resgraph.discriminant_order(resgraph.family_graph("B23", p))
    checks = {
        "order": order == expected,
        "model_order": model_order == expected,
        "abelianization": invariants_order(ab) == 4 * (p + 3) and ab == abelian_invariants(model),
        "cyclic_index_2": a_index == 2,
        "tietze_equivalent": iso,
        "matrix_isomorphism": mat_iso,
        "h1_matches_abelianization": h1 == ab,
        "discriminant": disc == 16 * (p + 3) ** 2,
        "self_isotropic": invariants_order(h1) ** 2 == disc,
    }
    return {
        "family": "B23", "p": p, "order": order, "ab": ab, "index_a": a_index,
        "h1": h1, "discriminant": disc, "matrix_iso": mat_iso, "checks": checks, "ok": all(checks.values()),
    }


# C23


C23_MODEL = Presentation.parse(("q", "c", "f"), ("[q,(q*c)^3]", "[f,q*c*q^-1]", "f*q*c^-1*q*c"))


def c23_monodromy_group(data: str | None = None) -> tuple[Presentation, Presentation]:
    """Presentation before and after killing the meridian of the extra line."""
    d = BraidMonodromyData.load(data_dir(data) / "c23_braid_monodromy.json")
    g, _ = braid_monodromy_presentation(d)
    return g, g.with_relators([g.word(w) for w in d.kill.values()])


def c23_certificates_ok(data: str | None = None) -> dict[str, bool]:
    _, killed = c23_monodromy_group(data)
    bundle = load_certificates(data_dir(data) / "c23_certificates.json")
    out = {}
    for section, (pres, certs) in bundle.items():
        for name, (target, cert) in certs.items():
            out[f"{section}/{name}"] = check_relator_certificate(pres, target, cert)
    # the stored presentations must be the ones computed here
    phi = [killed.word("q1"), killed.word("c"), killed.word("f")]
    psi = [C23_MODEL.word(w) for w in ("q", "q", "c", "f")]
    mono_p, mono = bundle["model_in_monodromy"]
    model_p, model = bundle["monodromy_in_model"]
    out["monodromy_matches_fixture"] = mono_p == killed
    out["model_matches_fixture"] = model_p == C23_MODEL
    reduced = tietze_eliminate(C23_MODEL, "f", 2)
    red_p, _ = bundle["reduced"]
    plus_p, _ = bundle["reduced_plus"]
    out["reduced_matches_model"] = red_p == reduced
    out["reduced_plus_extends_reduced"] = plus_p == reduced.with_relators([reduced.word("[q,c*q*c]")])
    out["model_relators_covered"] = {t for t, _ in mono.values()} >= {r.substitute(phi) for r in C23_MODEL.relators}
    out["monodromy_relators_covered"] = {t for t, _ in model.values()} >= {
        r.substitute(psi) for r in killed.relators if r.substitute(psi)
    }
    # the composite q2 -> q -> q1 is undone by the relator q2*q1^-1
    out["round_trip"] = killed.word("q2*q1^-1") in killed.relators
    return out


def verify_c23(p: int, data: str | None = None) -> dict:
    before, after = c23_monodromy_group(data)
    ab_before = abelian_invariants(before)
    ab_after = abelian_invariants(after)
    certs = c23_certificates_ok(data)
    model, kept = resgraph.family_model("C23", p, data_dir(data))
    h1 = resgraph.complement_h1(model, kept)
    disc = resgraph.discriminant_order(resgraph.family_graph("C23", p))
    checks = {
        "ab_three_curves": ab_after == [0, 0],
        "ab_four_curves": ab_before == [0, 0, 0],
        "certificates": all(certs.values()),
        "h1_cyclic": h1 == [3 * (p + 3)],
        "discriminant": disc == 9 * (p + 3) ** 2,
    }
    return {
        "family": "C23", "p": p, "ab": ab_after, "h1": h1, "discriminant": disc,
        "certificates": certs, "checks": checks, "ok": all(checks.values()),
    }


# C33


def verify_c33(p: int, data: str | None = None) -> dict:
    model, kept = resgraph.family_model("C33", p, data_dir(data))
    h1 = resgraph.complement_h1(model, kept)
    disc = resgraph.discriminant_order(resgraph.family_graph("C33", p))
    checks = {
        "h1_cyclic": h1 == [2 * (p + 4)],
        "discriminant": disc == 4 * (p + 4) ** 2,
    }
    return {"family": "C33", "p": p, "h1": h1, "discriminant": disc, "checks": checks,
            "ok": all(checks.values())}


# matrix group


def verify_matgroup(m: int) -> dict:
    s, t = matgroup.make_generators(m)
    g = matgroup.closure([s, t])
    inv = matgroup.group_invariants(g, m)
    fpf = matgroup.fixed_point_free(g)
    syl = matgroup.sylow_structure(m)
    n = matgroup.modulus_for(m)
    f, hyp = matgroup.invariant_polynomials(m)
    act = matgroup.polynomial_action
    ab_expected = [4 * (m + 1)] if m % 2 else [2, 2 * (m + 1)]
    checks = {
        "order": g.order == 4 * m * (m + 1),
        "T_squared": t * t == s ** m,
        "T_conjugation": t * s * t.inverse() == s ** (-(2 * m + 1)),
        "center": inv.center_order == 2 * (m + 1) and inv.center_is_S_power,
        "abelianization": list(inv.abelian_invariants) == ab_expected,
        "fixed_point_free": fpf.free,
        "SiT_squares": all((s ** i * t) ** 2 == s ** (-m * (2 * i - 1)) for i in range(n)),
        "SiT_even_order": all((s ** i * t).order() % 2 == 0 and (s ** i * t).order() > 2 for i in range(n)),
        "sylow": syl.consistent,
        "fixes_xw_plus_yz": act(s, f) == f and act(t, f) == f,
        "hypersurface_scalars": is_scalar_multiple(hyp, act(s, hyp)) == (1, -2 * m % n)
        and is_scalar_multiple(hyp, act(t, hyp)) == (1, m),
        "euler_characteristic": g.order == matgroup.milnor_fibre_euler_characteristic(m),
    }
    if m <= 5:
        checks["b23_isomorphism"] = matgroup.verify_b23_isomorphism(m)
    out = matgroup.report(m)
    out["checks"] = checks
    out["ok"] = all(checks.values())
    return out


def verify_gprime(m: int) -> dict:
    out = matgroup.report(m, "G'")
    expect_free = m % 2 == 0
    ok = out["fpf"] == expect_free and (expect_free or out.get("witness_order") == 2)
    out["ok"] = ok
    return out
