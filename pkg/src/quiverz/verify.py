"""Exhaustive and randomized verification drivers.

Each driver checks one statement about the chain variety at desk scale and
returns a VerifyReport: the exhaustive pair-step check over a tiny field, the
image sweep over small dimension vectors, the stability cross-check against
the subspace definition, and the reducibility reproduction on (1,4,5).
Failures carry a re-checkable counterexample payload.  All randomness is
derived per instance from a master seed, so reports are byte-stable across
runs and across worker counts.
"""

from __future__ import annotations

import hashlib
import itertools
import random
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field as dc_field
from typing import Dict, List, Optional, Sequence, Tuple

from quiverz.exactmat import DEFAULT_PRIME, ExactMatrix, FieldSpec, is_injective
from quiverz.exactmat import jordan_type as exact_jordan_type
from quiverz.partitions import (
    Partition,
    add,
    dominates,
    mu_of,
    partitions_of_weight,
    theta_image,
)
from quiverz.quiverrep import (
    QuiverRep,
    build_from_chain,
    check_relations,
    greedy_chain,
    is_stable,
    is_stable_subspace_criterion,
    nilpotency_degrees,
    random_chain,
    sample_stable,
    theta,
    witness_reducible,
)

DEFAULT_BUDGET = 10**7


@dataclass
class VerifyReport:
    """One verified statement: parameters, work size, verdict, and on failure
    an independently re-checkable counterexample."""

    statement: str
    params: dict
    size: int
    passed: bool
    instances: List[dict] = dc_field(default_factory=list)
    counterexample: Optional[dict] = None

    def to_json_dict(self) -> dict:
        return {
            "statement": self.statement,
            "params": self.params,
            "size": self.size,
            "pass": self.passed,
            "instances": self.instances,
            "counterexample": self.counterexample,
        }


class BudgetExceeded(ValueError):
    """Requested enumeration is larger than the configured budget."""


def derive_rng(seed: int, *key) -> random.Random:
    """Deterministic per-instance stream: hash the master seed with the
    instance key so results do not depend on scheduling."""
    tag = "|".join([str(seed)] + [str(k) for k in key])
    digest = hashlib.sha256(tag.encode()).digest()
    return random.Random(int.from_bytes(digest[:8], "big"))


# ---------------------------------------------------------------------------
# Raw mod-p helpers for the exhaustive pair enumeration (kept free of the
# ExactMatrix wrapper for speed; payloads are rebuilt as matrices on demand).


def _raw_mul(X, Y, p):
    n, m, k = len(X), len(Y), len(Y[0]) if Y else 0
    return [
        [sum(X[i][l] * Y[l][j] for l in range(m)) % p for j in range(k)]
        for i in range(n)
    ]


def _raw_rank(M, p):
    rows = [list(r) for r in M]
    nrows = len(rows)
    ncols = len(rows[0]) if nrows else 0
    r = 0
    for c in range(ncols):
        pivot = next((i for i in range(r, nrows) if rows[i][c] % p), None)
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        inv = pow(rows[r][c], p - 2, p)
        rows[r] = [(v * inv) % p for v in rows[r]]
        for i in range(r + 1, nrows):
            if rows[i][c] % p:
                f = rows[i][c]
                rows[i] = [(a - f * b) % p for a, b in zip(rows[i], rows[r])]
        r += 1
        if r == nrows:
            break
    return r


def _dual_tuple(parts: Tuple[int, ...]) -> Tuple[int, ...]:
    if not parts:
        return ()
    return tuple(sum(1 for q in parts if q >= i) for i in range(1, parts[0] + 1))


def _raw_type(M, p) -> Optional[Tuple[int, ...]]:
    """Jordan type of M as a tuple, or None if M is not nilpotent."""
    n = len(M)
    if n == 0:
        return ()
    increments = []
    P = M
    prev = 0
    for _ in range(n):
        k = n - _raw_rank(P, p)
        increments.append(k - prev)
        prev = k
        if k == n:
            return _dual_tuple(tuple(increments))
        P = _raw_mul(P, M, p)
    return None


def _dom_tuple(x: Tuple[int, ...], y: Tuple[int, ...]) -> bool:
    sx = sy = 0
    for i in range(max(len(x), len(y))):
        sx += x[i] if i < len(x) else 0
        sy += y[i] if i < len(y) else 0
        if sx < sy:
            return False
    return True


def ab_step_report(
    n: int, a: int, p: int = 2, budget: int = DEFAULT_BUDGET
) -> VerifyReport:
    """Enumerate every pair A: F_p^n -> F_p^{n+a}, B the other way, and check
    that for each partition eta of n the maximal AB-type over pairs with
    BA-type dominated by eta is exactly add(eta, a), dominating all others."""
    if n < 0 or a < 0:
        raise ValueError("sizes must be nonnegative")
    FieldSpec(p)  # validates primality
    cells = 2 * n * (n + a)
    size = p**cells
    if size > budget:
        raise BudgetExceeded(f"{size} pairs exceed the budget of {budget}")
    m = n + a
    seen: Dict[Tuple[tuple, tuple], int] = {}
    witness: Dict[Tuple[tuple, tuple], tuple] = {}
    for entries in itertools.product(range(p), repeat=cells):
        A = [list(entries[r * n : (r + 1) * n]) for r in range(m)]
        boff = m * n
        B = [list(entries[boff + r * m : boff + (r + 1) * m]) for r in range(n)]
        ta = _raw_type(_raw_mul(B, A, p), p)
        if ta is None:
            continue
        tb = _raw_type(_raw_mul(A, B, p), p)
        assert tb is not None  # AB is nilpotent whenever BA is
        key = (ta, tb)
        seen[key] = seen.get(key, 0) + 1
        if key not in witness:
            witness[key] = entries
    instances = []
    counterexample = None
    passed = True
    for eta in partitions_of_weight(n):
        expected = add(eta, a).parts
        reachable = sorted(
            {tb for (ta, tb) in seen if _dom_tuple(eta.parts, ta)}, reverse=True
        )
        ok = expected in reachable and all(_dom_tuple(expected, tb) for tb in reachable)
        instances.append(
            {
                "eta": list(eta.parts),
                "expected_max": list(expected),
                "reachable": [list(tb) for tb in reachable],
                "ok": ok,
            }
        )
        if not ok and counterexample is None:
            passed = False
            bad = next(
                (tb for tb in reachable if not _dom_tuple(expected, tb)), None
            )
            payload = {"eta": list(eta.parts), "expected_max": list(expected)}
            if bad is None:
                payload["missing"] = list(expected)
            else:
                payload["undominated_b_type"] = list(bad)
                ta_bad, entries = next(
                    (k[0], witness[k])
                    for k in witness
                    if k[1] == bad and _dom_tuple(eta.parts, k[0])
                )
                payload["pair"] = {
                    "a_type": list(ta_bad),
                    "A_entries": list(entries[: m * n]),
                    "B_entries": list(entries[m * n :]),
                }
            counterexample = payload
    passed = passed and all(inst["ok"] for inst in instances)
    return VerifyReport(
        statement="ab-step",
        params={"n": n, "a": a, "p": p},
        size=size,
        passed=passed,
        instances=instances,
        counterexample=counterexample,
    )


def pair_type_table(n: int, a: int, p: int = 2, budget: int = DEFAULT_BUDGET) -> Dict[tuple, set]:
    """Exhaustive map BA-type -> set of AB-types over all pairs; the matrix
    side of the placement enumeration, used as an independent oracle."""
    cells = 2 * n * (n + a)
    if p**cells > budget:
        raise BudgetExceeded(f"{p ** cells} pairs exceed the budget of {budget}")
    m = n + a
    table: Dict[tuple, set] = {}
    for entries in itertools.product(range(p), repeat=cells):
        A = [list(entries[r * n : (r + 1) * n]) for r in range(m)]
        boff = m * n
        B = [list(entries[boff + r * m : boff + (r + 1) * m]) for r in range(n)]
        ta = _raw_type(_raw_mul(B, A, p), p)
        if ta is None:
            continue
        tb = _raw_type(_raw_mul(A, B, p), p)
        table.setdefault(ta, set()).add(tb)
    return table


def strictly_monotone_vectors(max_last: int, min_len: int = 2) -> List[tuple]:
    """All strictly increasing dimension vectors with last entry <= max_last."""
    out = []
    for r in range(min_len, max_last + 1):
        out.extend(itertools.combinations(range(1, max_last + 1), r))
    return sorted(out)


def _theta_image_instance(d: tuple, p: int, seed: int, trials: int) -> dict:
    field = FieldSpec(p)
    rng = derive_rng(seed, "theta-image", d)
    lam = theta_image(d)
    mu = mu_of(d)
    checks = [("lambda_dominates_mu", dominates(lam, mu))]
    z = build_from_chain(greedy_chain(d), field)
    checks.append(("greedy_relations", check_relations(z)))
    checks.append(("greedy_nilpotency", nilpotency_degrees(z)))
    checks.append(("greedy_type_is_lambda", exact_jordan_type(theta(z)) == lam))
    for k in range(trials):
        zc = build_from_chain(random_chain(d, rng), field)
        tc = exact_jordan_type(theta(zc))
        checks.append((f"chain{k}_bounded_by_lambda", dominates(lam, tc)))
        checks.append((f"chain{k}_nilpotency", nilpotency_degrees(zc)))
    for k in range(trials):
        zs = sample_stable(d, field, rng)
        ts = exact_jordan_type(theta(zs))
        checks.append((f"stable{k}_is_stable", is_stable(zs)))
        checks.append((f"stable{k}_bounded_by_mu", dominates(mu, ts)))
        checks.append((f"stable{k}_nilpotency", nilpotency_degrees(zs)))
    failed = sorted(name for name, ok in checks if not ok)
    return {
        "d": list(d),
        "lambda": lam.to_list(),
        "mu": mu.to_list(),
        "failed": failed,
        "ok": not failed,
    }


def theta_image_report(
    max_last: int = 8,
    p: int = DEFAULT_PRIME,
    seed: int = 0,
    trials: int = 3,
    jobs: int = 1,
) -> VerifyReport:
    """Sweep all strictly monotone vectors up to max_last: the greedy chain
    realizes the image type exactly, random chains stay dominated by it, and
    stable samples stay dominated by the flag bound."""
    vectors = strictly_monotone_vectors(max_last)
    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            instances = list(
                pool.map(lambda d: _theta_image_instance(d, p, seed, trials), vectors)
            )
    else:
        instances = [_theta_image_instance(d, p, seed, trials) for d in vectors]
    bad = next((inst for inst in instances if not inst["ok"]), None)
    return VerifyReport(
        statement="theta-image",
        params={"max_last": max_last, "p": p, "seed": seed, "trials": trials},
        size=len(vectors) * (1 + 2 * trials),
        passed=bad is None,
        instances=instances,
        counterexample=bad,
    )


def _enumerate_z_points(dims: tuple, field: FieldSpec) -> List[QuiverRep]:
    """All points of the relation variety over a tiny field, by exhausting
    every matrix tuple and filtering the relations."""
    p = field.p
    t = len(dims)
    shapes = []
    for i in range(t - 1):
        shapes.append((dims[i + 1], dims[i]))
    for i in range(t - 1):
        shapes.append((dims[i], dims[i + 1]))
    sizes = [r * c for r, c in shapes]
    total = sum(sizes)
    points = []
    for entries in itertools.product(range(p), repeat=total):
        mats = []
        off = 0
        for (r, c), sz in zip(shapes, sizes):
            mats.append([list(entries[off + i * c : off + (i + 1) * c]) for i in range(r)])
            off += sz
        A_raw = mats[: t - 1]
        B_raw = mats[t - 1 :]
        ok = True
        prev = None
        for i in range(t - 1):
            ba = _raw_mul(B_raw[i], A_raw[i], p)
            if i == 0:
                if any(any(row) for row in ba):
                    ok = False
                    break
            elif ba != prev:
                ok = False
                break
            prev = _raw_mul(A_raw[i], B_raw[i], p)
        if not ok:
            continue
        A = [ExactMatrix(r, c, [v for row in m for v in row], field) for (r, c), m in zip(shapes[: t - 1], A_raw)]
        B = [ExactMatrix(r, c, [v for row in m for v in row], field) for (r, c), m in zip(shapes[t - 1 :], B_raw)]
        points.append(QuiverRep(dims, A, B, field))
    return points


def stability_report(
    dims_list: Sequence[Sequence[int]] = ((1, 2), (1, 2, 3)),
    p: int = 2,
    budget: int = DEFAULT_BUDGET,
) -> VerifyReport:
    """Exhaustively compare the injectivity criterion with the subspace
    definition of stability on every variety point over a tiny field."""
    field = FieldSpec(p)
    instances = []
    counterexample = None
    total = 0
    for dims in dims_list:
        dims = tuple(dims)
        cells = sum(2 * dims[i] * dims[i + 1] for i in range(len(dims) - 1))
        size = p**cells
        if size > budget:
            raise BudgetExceeded(f"{size} tuples for dims {dims} exceed the budget of {budget}")
        total += size
        points = _enumerate_z_points(dims, field)
        mismatches = []
        stable_count = 0
        for z in points:
            fast = is_stable(z)
            slow = is_stable_subspace_criterion(z)
            if fast:
                stable_count += 1
            if fast != slow:
                mismatches.append(z)
        ok = not mismatches
        instances.append(
            {
                "dims": list(dims),
                "tuples": size,
                "variety_points": len(points),
                "stable_points": stable_count,
                "ok": ok,
            }
        )
        if mismatches and counterexample is None:
            z = mismatches[0]
            counterexample = {
                "dims": list(dims),
                "injectivity_says": is_stable(z),
                "subspace_says": is_stable_subspace_criterion(z),
                "rep": z.to_json_dict(),
            }
    return VerifyReport(
        statement="stability",
        params={"dims": [list(d) for d in dims_list], "p": p},
        size=total,
        passed=counterexample is None and all(i["ok"] for i in instances),
        instances=instances,
        counterexample=counterexample,
    )


def reducible_report(p: int = DEFAULT_PRIME, seed: int = 0) -> VerifyReport:
    """Reproduce the reducibility certificate on (1,4,5): image type (3,2)
    against stable type (3,1,1), with a non-injective middle forward map on
    the chain witness and an exactly generic stable witness."""
    field = FieldSpec(p)
    rng = derive_rng(seed, "reducible", (1, 4, 5))
    report = witness_reducible((1, 4, 5), field, rng)
    z1 = QuiverRep.from_json_dict(report.witnesses[0]["rep"])
    z2 = QuiverRep.from_json_dict(report.witnesses[1]["rep"])
    checks = {
        "verdict": report.verdict == "reducible",
        "lambda": report.lam == Partition((3, 2)),
        "mu": report.mu == Partition((3, 1, 1)),
        "chain_type": report.witnesses[0]["theta_type"] == [3, 2],
        "chain_middle_map_not_injective": not is_injective(z1.A[1]),
        "chain_unstable": not is_stable(z1),
        "stable_witness_stable": is_stable(z2),
        "stable_type": report.witnesses[1]["theta_type"] == [3, 1, 1],
        "relations": check_relations(z1) and check_relations(z2),
    }
    failed = sorted(name for name, ok in checks.items() if not ok)
    return VerifyReport(
        statement="reducible",
        params={"d": [1, 4, 5], "p": p, "seed": seed},
        size=1,
        passed=not failed,
        instances=[
            {
                "d": [1, 4, 5],
                "report": report.to_json_dict(),
                "failed": failed,
                "ok": not failed,
            }
        ],
        counterexample=None if not failed else {"failed": failed, "report": report.to_json_dict()},
    )


SUITE_AB_STEP_INSTANCES = ((1, 1), (1, 2), (2, 0), (2, 1))


def suite_report(
    seed: int = 0,
    jobs: int = 1,
    budget: int = DEFAULT_BUDGET,
    p: int = DEFAULT_PRIME,
    max_last: int = 6,
    trials: int = 2,
) -> dict:
    """Run the whole driver battery with deterministic per-instance seeds;
    the returned dict serializes byte-identically for a fixed master seed
    regardless of worker count."""
    tasks = [
        lambda na=na: ab_step_report(na[0], na[1], p=2, budget=budget)
        for na in SUITE_AB_STEP_INSTANCES
    ]
    tasks.append(lambda: theta_image_report(max_last=max_last, p=p, seed=seed, trials=trials, jobs=1))
    tasks.append(lambda: stability_report(budget=budget))
    tasks.append(lambda: reducible_report(p=p, seed=seed))
    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            reports = list(pool.map(lambda f: f(), tasks))
    else:
        reports = [f() for f in tasks]
    return {
        "seed": seed,
        "pass": all(r.passed for r in reports),
        "reports": [r.to_json_dict() for r in reports],
    }
