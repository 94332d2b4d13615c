"""Identity suites run by ``flowpoly verify`` and the acceptance tests.

Each suite returns a list of report entries
{relation, params, lhs, rhs, pass}.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from . import ctseries, formulas, refine
from .digraph import build_complete, build_Gpq, build_kabc, reverse
from .dkk import clique_to_tree, default_framing, omega_table, theta, tree_degrees
from .exact import narayana
from .flows import enumerate_flows, kpf
from .formulas import _entry
from .volumes import volume_via_kpf

CT_MAX_N = 3


@dataclass(frozen=True)
class Grid:
    n: tuple[int, int] = (1, 3)
    a: tuple[int, int] = (1, 3)
    b: tuple[int, int] = (1, 3)
    c: tuple[int, int] = (0, 2)

    def points(self):
        for n in range(self.n[0], self.n[1] + 1):
            for a in range(self.a[0], self.a[1] + 1):
                for b in range(self.b[0], self.b[1] + 1):
                    for c in range(self.c[0], self.c[1] + 1):
                        yield n, a, b, c


_BOUND = re.compile(r"^\s*([nabc])\s*(<=|>=|=)\s*(\d+)\s*$")
_MINIMUM = {"n": 1, "a": 1, "b": 1, "c": 0}


def parse_grid(spec: str | None) -> Grid:
    """Parse bounds such as ``n<=2,a<=2,b<=2,c<=1`` (also >= and =)."""
    g = {f: list(getattr(Grid(), f)) for f in "nabc"}
    if not spec:
        return Grid(**{k: tuple(v) for k, v in g.items()})
    for part in spec.split(","):
        if not part.strip():
            continue
        m = _BOUND.match(part)
        if not m:
            raise ValueError(f"bad grid bound {part!r}")
        key, op, val = m.group(1), m.group(2), int(m.group(3))
        if op == "<=":
            g[key][1] = val
        elif op == ">=":
            g[key][0] = val
        else:
            g[key] = [val, val]
        if g[key][0] < _MINIMUM[key]:
            raise ValueError(f"{key} must be at least {_MINIMUM[key]}")
        if g[key][1] < g[key][0]:
            raise ValueError(f"empty range for {key}")
    return Grid(**{k: tuple(v) for k, v in g.items()})


def _phi_prime_via_kpf(n, k, a, b, c):
    return refine.phi_via_kpf(n, k, a, b, c) * math.factorial(k) * math.factorial(n - k)


def _tag(entries: list[dict], source: str) -> list[dict]:
    for e in entries:
        e["relation"] = f"{e['relation']}[{source}]"
    return entries


def suite_relations(grid: Grid) -> list[dict]:
    """Recurrences and symmetries on closed-form and on enumerated values."""
    out = []
    for n, a, b, c in grid.points():
        out += _tag(formulas.check_relations(n, a, b, c), "formula")
        out += _tag(
            formulas.check_relations(
                n, a, b, c,
                psi=refine.psi_via_kpf,
                morris_fn=refine.morris_via_kpf,
                phi_prime=_phi_prime_via_kpf,
                allow_shifted_zero=True,
            ),
            "kpf",
        )
    return out


def suite_thm14(grid: Grid) -> list[dict]:
    """Morris constant term: closed form vs flow count vs series."""
    out = []
    for n, a, b, c in grid.points():
        p = {"n": n, "a": a, "b": b, "c": c}
        m = formulas.morris(n, a, b, c)
        out.append(_entry("morris=kpf", p, m, refine.morris_via_kpf(n, a, b, c)))
        if n <= CT_MAX_N:
            out.append(_entry("morris=ct", p, m, ctseries.ct_morris(n, a, b, c)))
    return out


def suite_thm16(grid: Grid) -> list[dict]:
    """Psi: product formula vs KPF sum vs volume sum vs series."""
    out = []
    for n, a, b, c in grid.points():
        for k in range(n + 1):
            p = {"n": n, "k": k, "a": a, "b": b, "c": c}
            v = formulas.psi_product(n, k, a, b, c)
            out.append(_entry("psi=kpf", p, v, refine.psi_via_kpf(n, k, a, b, c)))
            out.append(_entry("psi=volumes", p, v, refine.psi_via_volumes(n, k, a, b, c)))
            if n <= CT_MAX_N:
                out.append(_entry("psi=ct", p, v, ctseries.ct_psi(n, k, a, b, c)))
        p = {"n": n, "a": a, "b": b, "c": c}
        total = sum(refine.psi_via_kpf(n, k, a, b, c) for k in range(n + 1))
        out.append(_entry("sum_k psi=M(a,b+1,c)[kpf]", p, total, refine.morris_via_kpf(n, a, b + 1, c)))
    return out


def suite_thm62(grid: Grid, ct_max_n: int = 2) -> list[dict]:
    """Phi: scaled Baldoni-Vergne product vs KPF sum vs series."""
    out = []
    for n, a, b, c in grid.points():
        if a + b < 2:
            continue
        for k in range(n + 1):
            p = {"n": n, "k": k, "a": a, "b": b, "c": c}
            v = formulas.phi_scaled(n, k, a, b, c)
            out.append(_entry("phi=kpf", p, v, refine.phi_via_kpf(n, k, a, b, c)))
            if n <= ct_max_n:
                out.append(_entry("phi=ct", p, v, ctseries.ct_phi(n, k, a, b, c)))
    return out


def _theta_entries(G, label: str, params: dict) -> list[dict]:
    fr = default_framing(G)
    table = omega_table(G, fr)
    Gr = reverse(G)
    flows = enumerate_flows(G, G.indegree_netflow())
    images = sorted(theta(G, f, fr, table) for f in flows)
    target = enumerate_flows(Gr, Gr.indegree_netflow())
    return [
        _entry(f"{label}:omega_onto", params, len(table), len(flows)),
        _entry(f"{label}:theta_bijective", params, int(images == target), 1),
    ]


def suite_symmetry(grid: Grid) -> list[dict]:
    """M(a,b,c) = M(b,a,c) three ways: formula, KPF of reversed graphs, theta."""
    out = []
    for n, a, b, c in grid.points():
        p = {"n": n, "a": a, "b": b, "c": c}
        out.append(_entry("morris_symmetry", p, formulas.morris(n, a, b, c), formulas.morris(n, b, a, c)))
        G, H = build_kabc(n, a, b, c), build_kabc(n, b, a, c)
        out.append(_entry("kpf_symmetry", p, volume_via_kpf(G), volume_via_kpf(H)))
        out.append(_entry("kpf_reverse", p, kpf(G, G.indegree_netflow()),
                          kpf(reverse(G), reverse(G).indegree_netflow())))
        if n == 2 and max(a, b, c) <= 2 and c >= 1:
            out += _theta_entries(G, "theta", p)
    return out


def suite_theta(grid: Grid, max_pq: int = 4) -> list[dict]:
    """Theta on k_4^{a,b,c} and the spanning-tree description on G(p,q)."""
    out = []
    for a in range(1, 3):
        for b in range(1, 3):
            for c in range(1, 3):
                out += _theta_entries(build_kabc(2, a, b, c), "theta_kabc", {"n": 2, "a": a, "b": b, "c": c})
    for p in range(1, max_pq + 1):
        for q in range(1, max_pq + 1):
            out += _gpq_entries(p, q)
    return out


def _gpq_entries(p: int, q: int) -> list[dict]:
    G = build_Gpq(p, q)
    fr = default_framing(G)
    table = omega_table(G, fr)
    params = {"p": p, "q": q}
    out = [_entry("gpq:lattice_points", params, len(table), math.comb(p + q - 2, p - 1))]
    agree = True
    for f, C in table.items():
        tree = clique_to_tree(G, C, fr)
        left, right = tree_degrees(tree, p, q)
        image = theta(G, f, fr, table)
        # (1,2) edges of G in framing order hold right degrees minus one
        if [f[e] for e in fr.outs[1]] != [d - 1 for d in right]:
            agree = False
        # in reverse(G) the old (0,1) edges leave vertex 1
        if [image[e] for e in fr.ins[1]] != [d - 1 for d in left]:
            agree = False
    out.append(_entry("gpq:theta=degree_swap", params, int(agree), 1))
    return out


def suite_cor_catalan(grid: Grid, max_n: int = 5) -> list[dict]:
    """CRY volumes and the Narayana refinement."""
    out = []
    for n in range(2, max_n + 1):
        expected = formulas.catalan_product(n)
        out.append(_entry("cry_volume", {"n": n}, volume_via_kpf(build_complete(n)), expected))
    for n in range(1, min(max_n, 4) + 1):
        for k in range(n + 1):
            out.append(_entry("narayana_refinement", {"n": n, "k": k},
                              refine.psi_via_kpf(n, k, 1, 1, 1),
                              narayana(n, k + 1) * formulas.catalan_product(n)))
    return out


ASYMPTOTIC_NS = (10, 20, 40, 60)


def asymptotic_residuals(case: str = "m111", ns=ASYMPTOTIC_NS) -> list[float]:
    """|log M - predicted| / n^2 for each n."""
    res = []
    for n in ns:
        predicted, exact = formulas.asymptotic_log_morris(case, n)
        res.append(abs(exact - predicted) / (n * n))
    return res


def suite_asymptotics(grid: Grid) -> list[dict]:
    out = []
    res = asymptotic_residuals("m111")
    decreasing = all(x > y for x, y in zip(res, res[1:]))
    out.append({
        "relation": "m111_residual_decreasing",
        "params": {"n": list(ASYMPTOTIC_NS)},
        "lhs": [round(r, 8) for r in res],
        "rhs": "strictly decreasing",
        "pass": decreasing,
    })
    return out


SUITES: dict[str, Callable[[Grid], list[dict]]] = {
    "relations": suite_relations,
    "thm14": suite_thm14,
    "thm16": suite_thm16,
    "thm62": suite_thm62,
    "symmetry": suite_symmetry,
    "theta": suite_theta,
    "cor-catalan": suite_cor_catalan,
    "asymptotics": suite_asymptotics,
}


def run_suite(name: str, grid: Grid) -> list[dict]:
    try:
        fn = SUITES[name]
    except KeyError:
        raise ValueError(f"unknown suite {name!r}") from None
    return fn(grid)


def failures(report: list[dict]) -> list[dict]:
    return [e for e in report if not e["pass"]]


def jsonable(value):
    if isinstance(value, Fraction):
        return value.numerator if value.denominator == 1 else f"{value.numerator}/{value.denominator}"
    if isinstance(value, dict):
        return {k: jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [jsonable(v) for v in value]
    return value
