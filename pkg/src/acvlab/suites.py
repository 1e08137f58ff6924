"""Seeded experiment suites and fixture re-verification.

A suite turns one structural claim about X_n into a batch of exact checks and
collects them in a :class:`SuiteReport`.  Records embed the witness data
(points, ranks, certificates) so a report can be re-verified later without
trusting its verdicts.
"""

from __future__ import annotations

import json
import time
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Callable

from .errors import InvalidConfig, ParseError, SchemaError, UnknownSuite
from .linalg import ExactMatrix, rank
from .quotient import quotient_consistency_check, wallach_generation_check
from .sampling import (
    RANGES,
    random_cartan,
    random_point,
    random_rank_one_pair,
    random_signed_permutation,
    random_symplectic,
    trial_rng,
)
from .scheme import (
    ACVPoint,
    GGPoint,
    dimension_certificate,
    expected_dim,
    gg_completion,
    gg_dim,
    gg_fiber_nonempty,
    gg_is_member,
    is_member,
    levi_dimension_identity,
    levi_nilpotent_bound,
    levi_types,
    moment_residual,
    weyl_transitivity_check,
    witness_point,
    yn_components,
    yn_membership,
)
from .serialize import (
    borel_parts_from_json,
    borel_to_json,
    canonical_dumps,
    certificate_to_json,
    matrix_to_json,
    point_digest,
    point_from_json,
    point_to_json,
)
from .symplectic import (
    CartanPoint,
    PhaseVector,
    SpElement,
    SymplecticSpace,
    cartan_embed,
    from_coords,
    sp_coords,
    weyl_act,
    weyl_canonical_form,
)
from .triangular import check_borel_data, classify_closed_orbit, symplectic_triangularize

CLAIMS = {
    "membership": "X_n is cut out by the moment map equation [x,y] + i^2 = 0",
    "smoothness": "X_n is a complete intersection of dimension 2n^2+3n; mu is a submersion at free-orbit points",
    "yn": "Y_n = {p_k q_k = 0} has 2^n components permuted simply transitively by {+-1}^n in W",
    "triangularize": "a rank <= 1 commutator puts x and y in a common Borel subalgebra of sp_2n",
    "closed-orbits": "closed orbits are exactly (x, y, 0) with x, y commuting semisimple",
    "quotient": "X_n//G = C_2(g)//G = (h+h)/W with W acting diagonally",
    "levi": "dim G/L + 2k + sum dim M_{n_i} + dim X_{n_0} = 2n^2+3n for every Levi type",
    "wallach": "Q[h+h]^W is generated as a Poisson algebra by the two copies of Q[h]^W",
    "mn": "M_n = {[x,y] + ij = 0} in sl_n, components of dimension n^2+2n-2",
}

SUITES = ("smoothness", "yn", "triangularize", "closed-orbits", "quotient", "levi", "wallach", "mn")


@dataclass(frozen=True)
class SuiteConfig:
    n: int
    seed: int = 0
    trials: int = 1
    degree_bound: int = 6
    output_path: str = "-"

    def __post_init__(self):
        if not isinstance(self.n, int) or self.n < 1:
            raise InvalidConfig("n must be >= 1")
        if not isinstance(self.trials, int) or self.trials < 1:
            raise InvalidConfig("trials must be >= 1")
        if not 0 <= self.seed < 2 ** 64:
            raise InvalidConfig("seed must be an unsigned 64-bit integer")
        if self.degree_bound < 0:
            raise InvalidConfig("degree bound must be non-negative")


@dataclass
class CheckRecord:
    name: str
    claim: str
    verdict: bool
    witness: dict = field(default_factory=dict)


@dataclass
class SuiteReport:
    suite: str
    config: dict
    records: list[CheckRecord]
    wall_time: float = 0.0
    ranges: dict = field(default_factory=lambda: dict(RANGES))

    @property
    def passed(self) -> bool:
        return all(r.verdict for r in self.records)

    def to_json(self) -> dict:
        return {
            "kind": "suite_report",
            "suite": self.suite,
            "config": self.config,
            "ranges": self.ranges,
            "records": [asdict(r) for r in self.records],
            "passed": self.passed,
            "summary": {"checks": len(self.records), "passed": sum(r.verdict for r in self.records)},
            "wall_time": self.wall_time,
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True, indent=2)


# ---------------------------------------------------------------------------
# individual suites


def _smoothness(cfg: SuiteConfig) -> list[CheckRecord]:
    out = []
    for k in range(cfg.trials):
        pt = random_point(trial_rng(cfg.seed, k), cfg.n)
        cert = dimension_certificate(pt)
        ok = (cert.stabilizer_dim == 0 and cert.smooth
              and cert.local_dim == expected_dim(cfg.n))
        out.append(CheckRecord(f"trial-{k}", CLAIMS["smoothness"], ok, certificate_to_json(cert)))
    return out


def _yn(cfg: SuiteConfig) -> list[CheckRecord]:
    n = cfg.n
    comps = yn_components(n)
    report = weyl_transitivity_check(n)
    out = [
        CheckRecord("component-count", CLAIMS["yn"], len(comps) == 2 ** n and len(set(comps)) == len(comps),
                    {"components": len(comps), "expected": 2 ** n}),
        CheckRecord("simple-transitivity", CLAIMS["yn"], report.passed, asdict(report)),
    ]
    broken = weyl_transitivity_check(n, comps[1:])
    out.append(CheckRecord("negative-control", CLAIMS["yn"], not broken.passed,
                           {"components": broken.components, "detected": not broken.passed}))
    for k in range(cfg.trials):
        pt = random_point(trial_rng(cfg.seed, k), n)
        sv = yn_membership(pt.i)
        out.append(CheckRecord(f"sample-{k}-in-Yn", CLAIMS["yn"], sv is not None,
                               {"i": [str(c) for c in pt.i.vec],
                                "component": "".join(c.value for c in sv) if sv else None}))
    return out


def _triangularize(cfg: SuiteConfig) -> list[CheckRecord]:
    out = []
    for k in range(cfg.trials):
        x, y = random_rank_one_pair(trial_rng(cfg.seed, k), cfg.n)
        cert = symplectic_triangularize(x, y)
        problems = check_borel_data(x.space, cert.g, x.mat, y.mat, cert.x_conj.mat, cert.y_conj.mat, cert.flag)
        witness = borel_to_json(cert)
        witness["violations"] = problems
        out.append(CheckRecord(f"trial-{k}", CLAIMS["triangularize"], not problems, witness))
    return out


def closed_orbit_battery(n: int) -> list[tuple[str, ACVPoint, bool]]:
    """Twelve labelled points of X_n with their expected closedness."""
    space = SymplecticSpace(n)
    zero_i = PhaseVector.zero(space)
    zero = SpElement.zero(space)
    t = CartanPoint(range(1, n + 1))
    s = CartanPoint([2 * v - 1 for v in range(n, 0, -1)])
    rng = trial_rng(0, 12)
    c = random_symplectic(rng, n)
    nil = from_coords(space, [1 if j == n * n else 0 for j in range(space.lie_dim)])  # B-unit E_11
    degenerate = CartanPoint([0] + list(range(2, n + 1)))
    jordan = cartan_embed(degenerate) + nil
    h_t, h_s = cartan_embed(t), cartan_embed(s)
    sampled = random_point(trial_rng(0, 13), n)
    return [
        ("origin", ACVPoint(zero, zero, zero_i), True),
        ("regular-cartan-x", ACVPoint(h_t, zero, zero_i), True),
        ("cartan-pair", ACVPoint(h_t, h_s, zero_i), True),
        ("conjugated-cartan-pair", ACVPoint(h_t.conjugate(c.g, c.g_inv), h_s.conjugate(c.g, c.g_inv), zero_i), True),
        ("equal-pair", ACVPoint(h_t, h_t, zero_i), True),
        ("conjugated-singular-x", ACVPoint(cartan_embed(degenerate).conjugate(c.g, c.g_inv), zero, zero_i), True),
        ("nilpotent-x", ACVPoint(nil, zero, zero_i), False),
        ("nilpotent-y", ACVPoint(zero, nil, zero_i), False),
        ("nilpotent-pair", ACVPoint(nil, nil.scale(3), zero_i), False),
        ("jordan-x", ACVPoint(jordan, zero, zero_i), False),
        ("free-orbit-witness", witness_point(n, t), False),
        ("noncommuting-sample", sampled, False),
    ]


def _closed_orbits(cfg: SuiteConfig) -> list[CheckRecord]:
    out = []
    for label, pt, expected in closed_orbit_battery(cfg.n):
        verdict = classify_closed_orbit(pt)
        out.append(CheckRecord(label, CLAIMS["closed-orbits"], verdict.closed == expected,
                               {"expected_closed": expected, "closed": verdict.closed,
                                "reasons": list(verdict.reasons), "point": point_to_json(pt)}))
    return out


def _quotient(cfg: SuiteConfig) -> list[CheckRecord]:
    n, D = cfg.n, cfg.degree_bound
    out = []
    for k in range(cfg.trials):
        rng = trial_rng(cfg.seed, k)
        t, s = random_cartan(rng, n), random_cartan(rng, n)
        c1, c2 = random_symplectic(rng, n), random_symplectic(rng, n)
        p1 = (cartan_embed(t).conjugate(c1.g, c1.g_inv), cartan_embed(s).conjugate(c1.g, c1.g_inv))
        if k % 2:
            w = random_signed_permutation(rng, n)
            t2, s2 = weyl_act(w, (t, s))
            how = {"w": w.to_json()}
        else:
            t2, s2 = t, s
            how = {"w": None}
        p2 = (cartan_embed(t2).conjugate(c2.g, c2.g_inv), cartan_embed(s2).conjugate(c2.g, c2.g_inv))
        rep = quotient_consistency_check(p1, p2, D)
        out.append(CheckRecord(f"equivalent-{k}", CLAIMS["quotient"],
                               rep.spectra_equal and rep.invariants_equal,
                               {"t": _vec(t.t), "s": _vec(s.t), **how,
                                "spectrum": [[str(a), str(b)] for a, b in rep.spectra[0].pairs],
                                "words_checked": rep.words_checked}))
        canon = weyl_canonical_form((t, s))
        while True:
            t3, s3 = random_cartan(rng, n), random_cartan(rng, n)
            if weyl_canonical_form((t3, s3)) != canon:
                break
        c3 = random_symplectic(rng, n)
        p3 = (cartan_embed(t3).conjugate(c3.g, c3.g_inv), cartan_embed(s3).conjugate(c3.g, c3.g_inv))
        rep = quotient_consistency_check(p1, p3, D)
        out.append(CheckRecord(f"separated-{k}", CLAIMS["quotient"],
                               (not rep.spectra_equal) and rep.separating_word is not None,
                               {"t": _vec(t.t), "s": _vec(s.t), "t_other": _vec(t3.t), "s_other": _vec(s3.t),
                                "separating_word": rep.separating_word}))
    return out


def _vec(v) -> list[str]:
    return [str(c) for c in v]


def _levi(cfg: SuiteConfig) -> list[CheckRecord]:
    out = []
    for m in range(1, cfg.n + 1):
        dim_g = 2 * m * m + m
        for lt in levi_types(m):
            bound = levi_nilpotent_bound(lt)
            ok = (levi_dimension_identity(lt) and bound <= dim_g + 2 * m - 1
                  and (bound == dim_g + 2 * m - 1) == (lt.k == 0))
            out.append(CheckRecord(f"n={m} n0={lt.n0} parts={list(lt.parts)}", CLAIMS["levi"], ok,
                                   {"n": m, "n0": lt.n0, "parts": list(lt.parts), "bound": bound,
                                    "dim_g_plus_2n_minus_1": dim_g + 2 * m - 1}))
    return out


def _wallach(cfg: SuiteConfig) -> list[CheckRecord]:
    rep = wallach_generation_check(cfg.n, cfg.degree_bound)
    data = rep.to_json()
    return [CheckRecord(f"closure-n={cfg.n}-D={cfg.degree_bound}", CLAIMS["wallach"], rep.passed, data)]


def gg_sample(rng, n: int) -> GGPoint:
    """Member of M_n over a diagonal ``x`` with distinct entries.

    ``i_a j_a = 0`` for every ``a`` lets ``[x, y] = -ij`` be solved entrywise.
    """
    diag = rng.sample(range(-2 * n - 2, 2 * n + 3), n)
    mean = sum(diag)
    x = ExactMatrix.diag([n * d - mean for d in diag])  # traceless, still distinct
    i = [rng.randint(-2, 2) for _ in range(n)]
    j = [0 if i[a] else rng.randint(-2, 2) for a in range(n)]
    ydiag = [rng.randint(-2, 2) for _ in range(n)]
    ydiag[-1] = -sum(ydiag[:-1])
    rows = [[ydiag[a] if a == b else -i[a] * j[b] / (x[a, a] - x[b, b]) for b in range(n)] for a in range(n)]
    return GGPoint(x, ExactMatrix.from_rows(rows), i, j)


def _mn(cfg: SuiteConfig) -> list[CheckRecord]:
    n = cfg.n
    out = [CheckRecord("dimension-constant", CLAIMS["mn"], gg_dim(n) == n * n + 2 * n - 2,
                       {"n": n, "dim": gg_dim(n)})]
    for k in range(cfg.trials):
        rng = trial_rng(cfg.seed, k)
        pt = gg_sample(rng, n)
        member = gg_is_member(pt)
        completion = gg_completion(pt.x, pt.y)
        ok = member and completion is not None and gg_is_member(completion)
        out.append(CheckRecord(f"member-{k}", CLAIMS["mn"], ok,
                               {"x": matrix_to_json(pt.x), "y": matrix_to_json(pt.y),
                                "i": _vec(pt.i), "j": _vec(pt.j)}))
    if n >= 2:
        # [E_12 + E_21, diag(1,-1)] has rank 2: no (i, j) can cancel it
        x = ExactMatrix.from_rows([[1 if {a, b} == {0, 1} else 0 for b in range(n)] for a in range(n)])
        y = ExactMatrix.diag([1, -1] + [0] * (n - 2))
        c_rank = rank(x @ y - y @ x)
        out.append(CheckRecord("rank-2-obstruction", CLAIMS["mn"],
                               c_rank == 2 and not gg_fiber_nonempty(x, y) and gg_completion(x, y) is None,
                               {"commutator_rank": c_rank}))
    return out


_DISPATCH: dict[str, Callable[[SuiteConfig], list[CheckRecord]]] = {
    "smoothness": _smoothness,
    "yn": _yn,
    "triangularize": _triangularize,
    "closed-orbits": _closed_orbits,
    "quotient": _quotient,
    "levi": _levi,
    "wallach": _wallach,
    "mn": _mn,
}


def run_suite(name: str, cfg: SuiteConfig) -> SuiteReport:
    if name not in _DISPATCH:
        raise UnknownSuite(f"unknown suite {name!r}; choose from {', '.join(SUITES)}")
    start = time.perf_counter()
    records = _DISPATCH[name](cfg)
    config = {"n": cfg.n, "seed": cfg.seed, "trials": cfg.trials, "degree_bound": cfg.degree_bound}
    return SuiteReport(name, config, records, wall_time=round(time.perf_counter() - start, 6))


# ---------------------------------------------------------------------------
# fixtures


def _verify_point(data: dict) -> list[CheckRecord]:
    pt = point_from_json(data)
    residual = moment_residual(pt)
    records = [CheckRecord("moment-equation", CLAIMS["membership"], residual.is_zero(),
                           {"residual": [str(c) for c in sp_coords(residual)],
                            "point_digest": point_digest(pt)})]
    if residual.is_zero():
        cert = dimension_certificate(pt)
        records.append(CheckRecord("dimension", CLAIMS["smoothness"], True, certificate_to_json(cert)))
    return records


def _verify_dimension(data: dict) -> list[CheckRecord]:
    try:
        pt = point_from_json(data["point"])
        stored = {k: data[k] for k in ("jacobian_rank", "stabilizer_dim", "point_digest")}
    except KeyError as exc:
        raise SchemaError(f"dimension certificate lacks {exc}") from exc
    if not is_member(pt):
        return [CheckRecord("moment-equation", CLAIMS["membership"], False, {"point_digest": point_digest(pt)})]
    fresh = certificate_to_json(dimension_certificate(pt))
    mismatched = [k for k in stored if stored[k] != fresh[k]]
    ok = not mismatched and fresh["verdict"] == "smooth"
    return [CheckRecord("dimension", CLAIMS["smoothness"], ok,
                        {"recomputed": {k: fresh[k] for k in stored}, "mismatched": mismatched,
                         "verdict": fresh["verdict"]})]


def _verify_borel(data: dict) -> list[CheckRecord]:
    parts = borel_parts_from_json(data)
    problems = check_borel_data(parts["space"], parts["g"], parts["x"], parts["y"],
                                parts["x_conj"], parts["y_conj"], parts["flag"])
    return [CheckRecord("borel-certificate", CLAIMS["triangularize"], not problems, {"violations": problems})]


def _verify_report(data: dict) -> list[CheckRecord]:
    out = []
    for rec in data.get("records", []):
        witness = rec.get("witness", {})
        kind = witness.get("kind")
        if kind in _VERIFIERS:
            for sub in _VERIFIERS[kind](witness):
                sub.name = f"{rec.get('name')}/{sub.name}"
                out.append(sub)
    if not out:
        raise SchemaError("suite report carries no re-verifiable witnesses")
    return out


_VERIFIERS: dict[str, Callable[[dict], list[CheckRecord]]] = {
    "acv_point": _verify_point,
    "dimension_certificate": _verify_dimension,
    "borel_certificate": _verify_borel,
}


def verify_data(data: dict) -> SuiteReport:
    start = time.perf_counter()
    if not isinstance(data, dict) or "kind" not in data:
        raise SchemaError("fixture must be a JSON object with a 'kind'")
    kind = data["kind"]
    if kind == "suite_report":
        records = _verify_report(data)
    elif kind in _VERIFIERS:
        records = _VERIFIERS[kind](data)
    else:
        raise SchemaError(f"unknown fixture kind {kind!r}")
    return SuiteReport("verify", {"kind": kind}, records, wall_time=round(time.perf_counter() - start, 6))


def verify_fixture(path: str | Path) -> SuiteReport:
    """Re-verify a stored point, certificate or suite report from scratch."""
    try:
        data = json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: {exc}") from exc
    return verify_data(data)


def sample_fixture(n: int, seed: int) -> dict:
    pt = random_point(trial_rng(seed, 0), n)
    return point_to_json(pt)


def report_without_time(report: SuiteReport) -> str:
    data = report.to_json()
    data.pop("wall_time")
    return canonical_dumps(data)

