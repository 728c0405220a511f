"""Invariant suites behind ``graphcx verify``."""

from __future__ import annotations

from dataclasses import dataclass
from math import comb, factorial
from typing import Callable

from . import characters as ch
from . import complexes as cxm
from . import homology as ho
from . import morse as mo
from . import posets as po
from . import series as se


@dataclass(frozen=True)
class Check:
    name: str
    passed: bool
    detail: str = ""

    def as_dict(self) -> dict:
        return {"name": self.name, "passed": self.passed, "detail": self.detail}


def _vanishes(cx: cxm.SimplicialComplex) -> bool:
    return all(g.is_zero for g in ho.reduced_homology(cx).values())


def morse_suite(max_n: int = 5) -> list[Check]:
    out = []
    for n in range(4, max_n + 1):
        for k in range(3, n):
            cx = mo.build_delta_k1k(n, k).enumerate()
            M = mo.apm_matching(n, k, cx)
            rep = mo.is_acyclic_perfect_matching(cx, M)
            trace = mo.collapse_by_matching(cx, M)
            ok = rep.ok and len(trace) == len(M) and len(M) * 2 == cx.num_faces()
            out.append(Check(f"apm n={n} k={k}", ok, f"{len(M)} pairs, {rep.as_dict()}"))
    for n in range(3, max_n + 1):
        for k in range(2, n):
            out.append(Check(f"Delta({k}) acyclic n={n}", _vanishes(mo.build_delta_k(n, k))))
        for k in range(3, n):
            out.append(Check(f"Delta({k - 1},{k}) acyclic n={n}", _vanishes(mo.build_delta_k1k(n, k))))
    for n in range(4, min(max_n, 5) + 1):
        bad = mo.phi_fiber_violations(n)
        out.append(Check(f"phi fibers n={n}", not bad, f"{len(bad)} violations"))
    return out


def duality_checks(n: int) -> list[Check]:
    """Free ranks and torsion of ``M_n`` against the Alexander dual ``Delta_n^{n-2}``."""
    m = comb(n, 2)
    Mn = ho.reduced_homology(cxm.matching_complex(n))
    D = ho.reduced_homology(cxm.not_i_connected_complex(n, 2, n - 2))
    zero = ho.HomologyGroup(0)
    out = []
    top = m - 3
    for i in range(-1, top + 2):
        bi = Mn.get(i, zero).betti
        bd = D.get(m - i - 3, zero).betti
        ti = Mn.get(i, zero).torsion
        td = D.get(m - i - 4, zero).torsion
        if bi != bd or ti != td:
            out.append(Check(f"duality n={n} dim {i}", False, f"M_n: {bi}, {ti}; dual side: {bd}, {td}"))
    if not out:
        out.append(Check(f"duality n={n}", True, "free ranks and torsion shift agree in every dimension"))
    return out


def duality_suite() -> list[Check]:
    out = duality_checks(4) + duality_checks(5)
    b1 = ho.reduced_homology(cxm.matching_complex(5))[1].betti
    b6 = ho.reduced_homology(cxm.not_i_connected_complex(5, 2, 3))[6].betti
    out.append(Check("beta_1(M_5) = beta_6(Delta_5^3)", b1 == b6 == 6, f"{b1} vs {b6}"))
    return out


def sigma_suite(max_n: int = 5) -> list[Check]:
    out = []
    M3 = se.mobius_series(3, max(max_n, 6) + 1)
    for n in range(3, max_n + 1):
        S = po.sigma_lattice(n, 2)
        mu = po.moebius(S)
        out.append(Check(f"mu Sigma_{n},2", mu == -factorial(n - 2), str(mu)))
        rep = po.rank_and_chain_spectrum(S)
        out.append(Check(f"rank Sigma_{n},2", bool(rep.rank_ok), str(rep.as_dict())))
        out.append(Check(f"coatoms Sigma_{n},2", not po.coatom_violations(S)))
    for n in range(4, max_n + 1):
        S = po.sigma_lattice(n, 3)
        mu = po.moebius(S)
        out.append(Check(f"mu Sigma_{n},3", mu == M3[n], f"{mu} vs series {M3[n]}"))
        rep = po.rank_and_chain_spectrum(S)
        out.append(Check(f"rank Sigma_{n},3", bool(rep.rank_ok), str(rep.as_dict())))
    for n, k in ((7, 4), (8, 4)):
        got = po.maximal_chain_lengths(po.sigma_lattice(n, k))
        want = po.predicted_chain_lengths(n, k)
        out.append(Check(f"chains Sigma_{n},{k}", got == want, f"{sorted(got)} vs {sorted(want)}"))
    return out


def _brute_series_check(label: str, seq, brute: Callable[[int], int], ns) -> Check:
    got = {n: seq[n] for n in ns}
    want = {n: brute(n) for n in ns}
    bad = {n: (got[n], want[n]) for n in ns if got[n] != want[n]}
    return Check(label, not bad, "ok" if not bad else f"series vs brute: {bad}")


def series_suite(max_brute_n: int = 7) -> list[Check]:
    out = []
    M2 = se.mobius_series(2, 11)
    out.append(Check("M_2 = -(n-2)!", all(M2[n] == -factorial(n - 2) for n in range(2, 11))))
    M3 = se.mobius_series(3, 10)
    want = [0, 0, -1, 3, -21, 180, -2010, 27090, -430290]
    got = [M3[n] for n in range(1, 10)]
    out.append(Check("M_3 printed values", got == want, str(got)))
    # for 1 < n < k the k-equal lattice is a single point and is not compared
    for k in (2, 3, 4):
        tau = se.tau_series(k, 8)
        out.append(_brute_series_check(f"tau_{k} vs k-equal lattice", tau,
                                       lambda n: po.moebius(po.k_equal_lattice(n, k)),
                                       [1, *range(k, 8)]))
    for k in (2, 3):
        alpha = se.alpha_series(k, 7)
        out.append(_brute_series_check(f"alpha_{k} vs brute force", alpha,
                                       lambda n: po.alpha_brute_force(n, k), range(k, 7)))
    ns = range(1, max_brute_n + 1)
    for label, fn, forbid in (("F^(n-3)", se.dual_euler_series_nminus3, True),
                              ("cycles and paths", se.cycles_paths_series, False)):
        s, egf = fn(max_brute_n + 1)
        out.append(Check(f"{label} integral", not se.integrality_failures(s)))
        out.append(_brute_series_check(f"{label} vs brute force", egf,
                                       lambda n: cxm.reduced_euler(cxm.paths_cycles_complex(n, forbid)), ns))
    out.append(Check("exponential formula", se.exponential_formula_check(se.tau_series(3, 9), 8)))
    return out


TABLE1 = {3: 1, 4: 1, 5: 2, 6: 6, 7: 18, 8: 96, 9: 564, 10: 4072, 11: 32990}


def character_suite(max_fixed_n: int = 5) -> list[Check]:
    out = []
    got = {n: ch.trivial_multiplicity(n) for n in TABLE1}
    out.append(Check("w_n", got == TABLE1, str(list(got.values()))))
    direct = {n: ch.omega_n2(n).cyclic_trivial_multiplicity() for n in TABLE1}
    out.append(Check("w_n by cyclic average", direct == TABLE1))
    for n in range(4, max_fixed_n + 1):
        a = ch.omega_n2(n).integer_values()
        b = ch.omega_via_fixed_points(n).integer_values()
        diff = {" ".join(map(str, l)): (a[l], b[l]) for l in a if a[l] != b[l]}
        out.append(Check(f"omega_{n} vs fixed points", not diff, str(diff) if diff else "ok"))
    for n in range(1, 13):
        ok = ch.lie_character(n) == ch.lie_character_induced(n)
        out.append(Check(f"lie_{n} closed form", ok))
    return out


SUITES: dict[str, Callable[[], list[Check]]] = {
    "morse": morse_suite,
    "duality": duality_suite,
    "sigma": sigma_suite,
    "series": series_suite,
    "characters": character_suite,
}


def run(suite: str) -> dict[str, list[Check]]:
    if suite == "all":
        return {name: fn() for name, fn in SUITES.items()}
    if suite not in SUITES:
        raise KeyError(suite)
    return {suite: SUITES[suite]()}
