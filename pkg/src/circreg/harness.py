"""Verification harness: runs every numbered check against its closed-form
expectation and assembles a reproducible report.

All randomness flows from one root seed recorded in the report header, so
re-running with the same configuration reproduces the report bit-exactly
apart from wall times.
"""

from __future__ import annotations

import itertools
import json
import random
import time
from dataclasses import dataclass, field, asdict

from . import __version__
from .betti import (CHECK_PRIME, DEFAULT_LATTICE_LIMIT, DEFAULT_PRIME,
                    betti_table, regularity, regularity_at_most)
from .edge_ideals import (EdgeTuple, disjoint_union, edge_ideal,
                          even_connection_graph, intermediate_ideal,
                          radical_splitting_check,
                          squarefree_colon_reduction_check,
                          loop_dominance_check, symbolic_membership,
                          symbolic_only_generators, symbolic_power,
                          verify_banerjee)
from .errors import CapacityExceeded
from .formulas import (expected_im, expected_reg_base, expected_reg_general,
                       expected_reg_power)
from .graphs import (bits, cubic_circulant, decompose_cubic,
                     induced_matching_number, odd_cycles,
                     closed_neighborhood, mask_of)
from .monomials import Monomial, MonomialIdeal, minimalize

ALL_CHECKS = (
    "im", "reg_base", "reg_power", "reg_symbolic", "intermediate",
    "banerjee", "colon_reg_bound", "loop_dominance", "radical_splitting",
    "multiplicity_reduction", "radical_colon", "decompose", "general_power",
    "disjoint_union", "betti_selfcheck", "oracles", "odd_cycle_neighborhood",
)


@dataclass
class SuiteConfig:
    max_n: int = 5
    max_t: int = 2
    seed: int = 20250824
    prime: int = DEFAULT_PRIME
    check_prime: int = CHECK_PRIME
    lattice_limit: int = DEFAULT_LATTICE_LIMIT
    extended: bool = False
    checks: tuple[str, ...] = ALL_CHECKS

    def __post_init__(self):
        unknown = set(self.checks) - set(ALL_CHECKS)
        if unknown:
            raise ValueError(f"unknown checks: {sorted(unknown)}")


@dataclass
class CheckRecord:
    check: str
    params: dict
    expected: object
    computed: object
    status: str  # pass | fail | skipped
    reason: str | None = None
    millis: float = 0.0

    def sort_key(self):
        return (self.check, json.dumps(self.params, sort_keys=True))


@dataclass
class VerificationReport:
    version: str
    seed: int
    primes: tuple[int, int]
    limits: dict
    records: list[CheckRecord] = field(default_factory=list)

    @property
    def summary(self) -> dict:
        counts = {"pass": 0, "fail": 0, "skipped": 0}
        for r in self.records:
            counts[r.status] += 1
        return counts

    @property
    def exit_code(self) -> int:
        s = self.summary
        if s["fail"]:
            return 1
        if s["skipped"]:
            return 3
        return 0

    def to_dict(self) -> dict:
        return {
            "header": {
                "version": self.version,
                "seed": self.seed,
                "primes": list(self.primes),
                "limits": self.limits,
            },
            "records": [asdict(r) for r in self.records],
            "footer": self.summary,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2) + "\n"

    def to_csv(self) -> str:
        lines = ["check,params,expected,computed,status,reason,millis"]
        for r in self.records:
            params = json.dumps(r.params, sort_keys=True).replace('"', "'")
            lines.append(
                f"{r.check},\"{params}\",{r.expected},{r.computed},"
                f"{r.status},{r.reason or ''},{r.millis:.0f}")
        return "\n".join(lines) + "\n"

    def to_text(self) -> str:
        lines = [
            f"circreg verification report (version {self.version}, "
            f"seed {self.seed}, primes {self.primes[0]}/{self.primes[1]})",
            "-" * 78,
        ]
        for r in self.records:
            params = " ".join(f"{k}={v}" for k, v in sorted(r.params.items()))
            detail = f"expected={r.expected} computed={r.computed}"
            if r.status == "skipped":
                detail = f"reason: {r.reason}"
            lines.append(f"[{r.status.upper():7}] {r.check:24} {params:34} {detail}")
        s = self.summary
        lines.append("-" * 78)
        lines.append(
            f"pass {s['pass']}  fail {s['fail']}  skipped {s['skipped']}")
        return "\n".join(lines) + "\n"


class _Runner:
    def __init__(self, config: SuiteConfig):
        self.config = config
        self.records: list[CheckRecord] = []
        self._ideal_cache: dict = {}

    def record(self, check: str, params: dict, expected, computed,
               millis: float, reason: str | None = None) -> CheckRecord:
        if reason is not None:
            status = "skipped"
        else:
            status = "pass" if expected == computed else "fail"
        rec = CheckRecord(check, params, expected, computed, status,
                          reason, millis)
        self.records.append(rec)
        return rec

    def run(self, check: str, params: dict, expected, fn) -> CheckRecord:
        t0 = time.perf_counter()
        try:
            computed = fn()
        except CapacityExceeded as exc:
            return self.record(check, params, expected, None,
                               (time.perf_counter() - t0) * 1e3,
                               reason=f"capacity: {exc}")
        return self.record(check, params, expected, computed,
                           (time.perf_counter() - t0) * 1e3)

    def skip(self, check: str, params: dict, reason: str) -> CheckRecord:
        return self.record(check, params, None, None, 0.0, reason=reason)

    # ---- shared ingredients -------------------------------------------

    def power_ideal(self, n: int, a: int, t: int) -> MonomialIdeal:
        key = ("power", n, a, t)
        if key not in self._ideal_cache:
            self._ideal_cache[key] = edge_ideal(cubic_circulant(n, a)).power(t)
        return self._ideal_cache[key]

    def symbolic_ideal(self, n: int, a: int, t: int) -> MonomialIdeal:
        key = ("symbolic", n, a, t)
        if key not in self._ideal_cache:
            self._ideal_cache[key] = symbolic_power(cubic_circulant(n, a), t)
        return self._ideal_cache[key]

    def reg(self, I: MonomialIdeal) -> int:
        return regularity(I, self.config.prime,
                          lattice_limit=self.config.lattice_limit)

    def connected_cases(self) -> list[tuple[int, int]]:
        out = []
        for n in range(3, self.config.max_n + 1, 2):
            for a in (1, 2):
                out.append((n, a))
        return out

    def power_cases(self) -> list[tuple[int, int, int]]:
        out = []
        for n, a in self.connected_cases():
            if n >= 7 and not self.config.extended:
                continue  # 14-variable powers are multi-minute computations
            for t in range(2, self.config.max_t + 1):
                if n >= 5 and t >= 3 and not self.config.extended:
                    continue
                out.append((n, a, t))
        return out

    # ---- individual checks --------------------------------------------

    def check_im(self):
        for n in (3, 5, 7, 9):
            for a in (1, 2):
                G = cubic_circulant(n, a)
                self.run("im", {"n": n, "a": a}, expected_im(n),
                         lambda G=G: induced_matching_number(G))

    def check_odd_cycle_neighborhood(self):
        """Every odd cycle's open neighborhood covers the whole vertex set."""
        for n, a in self.connected_cases():
            G = cubic_circulant(n, a)

            def worst(G=G):
                full = G.full_mask
                for cyc in odd_cycles(G):
                    covered = 0
                    for v in cyc:
                        covered |= G.adjacency[v]
                    if covered != full:
                        return [v + 1 for v in cyc]
                return True

            self.run("odd_cycle_neighborhood", {"n": n, "a": a}, True, worst)

    def check_reg_base(self):
        for n, a in self.connected_cases():
            exp = expected_reg_base(n, a)
            self.run("reg_base",
                     {"n": n, "a": a, "case": exp.formula_case},
                     exp.value, lambda n=n, a=a: self.reg(self.power_ideal(n, a, 1)))

    def _reg_with_lower_bound(self, check: str, n: int, a: int, t: int,
                              ideal_fn) -> None:
        exp = expected_reg_power(n, a, t)
        rec = self.run(check, {"n": n, "a": a, "t": t, "case": exp.formula_case},
                       exp.value, lambda: self.reg(ideal_fn()))
        if rec.status != "skipped":
            bound = 2 * t - 1 + expected_im(n)
            self.record("lower_bound_" + check,
                        {"n": n, "a": a, "t": t},
                        True, rec.computed >= bound, rec.millis)

    def check_reg_power(self):
        for n, a, t in self.power_cases():
            self._reg_with_lower_bound("reg_power", n, a, t,
                                       lambda n=n, a=a, t=t: self.power_ideal(n, a, t))

    def check_reg_symbolic(self):
        for n, a, t in self.power_cases():
            self._reg_with_lower_bound("reg_symbolic", n, a, t,
                                       lambda n=n, a=a, t=t: self.symbolic_ideal(n, a, t))

    def check_intermediate(self):
        rng = random.Random(self.config.seed ^ 0x1DEA)
        cases = [(3, 2, 2, "exhaustive"), (5, 1, 2, "sampled")]
        for n, a, t, mode in cases:
            if n > self.config.max_n:
                continue
            G = cubic_circulant(n, a)
            extras = symbolic_only_generators(G, t)
            if mode == "exhaustive":
                subsets = [tuple(c) for r in range(len(extras) + 1)
                           for c in itertools.combinations(extras, r)]
            else:
                subsets = []
                for _ in range(10):
                    sel = tuple(g for g in extras if rng.random() < 0.5)
                    subsets.append(sel)
            expected = expected_reg_power(n, a, t).value
            for idx, sel in enumerate(subsets):
                self.run("intermediate",
                         {"n": n, "a": a, "t": t, "subset": idx,
                          "size": len(sel)},
                         expected,
                         lambda G=G, t=t, sel=sel:
                         self.reg(intermediate_ideal(G, t, sel)))

    def _tuple_sets(self) -> list[tuple[int, int, list[EdgeTuple]]]:
        """The shared tuple corpus: exhaustive at n = 3, seeded elsewhere."""
        rng = random.Random(self.config.seed ^ 0xBA4E)
        out = []
        for n, a in self.connected_cases():
            G = cubic_circulant(n, a)
            edges = G.edges()
            tuples: list[EdgeTuple] = []
            if n == 3:
                for L in (0, 1, 2):
                    for tup in itertools.combinations_with_replacement(edges, L):
                        tuples.append(EdgeTuple(G, tup))
            else:
                for _ in range(100):
                    L = rng.randint(1, 3)
                    tuples.append(EdgeTuple(
                        G, tuple(rng.choice(edges) for _ in range(L))))
            out.append((n, a, tuples))
        return out

    def check_banerjee(self):
        for n, a, tuples in self._tuple_sets():
            G = cubic_circulant(n, a)

            def count_failures(G=G, tuples=tuples):
                bad = [str(e) for e in tuples if not verify_banerjee(G, e)]
                return bad or 0

            self.run("banerjee", {"n": n, "a": a, "tuples": len(tuples)},
                     0, count_failures)

    def check_colon_reg_bound(self):
        for n, a, tuples in self._tuple_sets():
            # the bound concerns colons of I^t with t >= 2, so the empty
            # tuple (t = 1, where reg(I) itself may exceed it) is out
            tuples = [e for e in tuples if len(e) >= 1]
            if n >= 7 and not self.config.extended:
                # full regularity bound checks cost seconds per tuple here;
                # keep a seeded subsample on the default path
                tuples = tuples[:15]
            G = cubic_circulant(n, a)
            bound = expected_im(n) + 1
            cache: dict = {}

            def failures(G=G, tuples=tuples, bound=bound, cache=cache):
                bad = [str(e) for e in tuples
                       if not regularity_at_most(
                           edge_ideal(even_connection_graph(G, e)), bound,
                           self.config.prime,
                           lattice_limit=self.config.lattice_limit,
                           cache=cache)]
                return bad or 0

            self.run("colon_reg_bound",
                     {"n": n, "a": a, "tuples": len(tuples), "bound": bound},
                     0, failures)

    def check_loop_dominance(self):
        for n, a, tuples in self._tuple_sets():
            G = cubic_circulant(n, a)
            self.run("loop_dominance", {"n": n, "a": a, "tuples": len(tuples)},
                     0,
                     lambda G=G, tuples=tuples:
                     [str(e) for e in tuples if not loop_dominance_check(G, e)] or 0)

    def check_radical_splitting(self):
        for n, a, tuples in self._tuple_sets():
            G = cubic_circulant(n, a)
            distinct = [e for e in tuples
                        if len(e) >= 1 and len(set(e.edges)) == len(e.edges)]

            def failures(G=G, distinct=distinct):
                return [str(e) for e in distinct
                        if not radical_splitting_check(G, e)] or 0

            self.run("radical_splitting",
                     {"n": n, "a": a, "tuples": len(distinct)}, 0, failures)

    def check_multiplicity_reduction(self):
        rng = random.Random(self.config.seed ^ 0x3E9)
        for n, a in self.connected_cases():
            G = cubic_circulant(n, a)
            edges = G.edges()

            def failures(G=G, edges=edges, rng=rng):
                bad = []
                for _ in range(100):
                    s = rng.randint(1, 2)
                    support = rng.sample(edges, s)
                    # force at least one repetition, total length <= 3
                    mult = [rng.randint(1, 2) for _ in support]
                    if all(m == 1 for m in mult):
                        mult[rng.randrange(s)] = 2
                    tup = tuple(e for e, m in zip(support, mult)
                                for _ in range(m))
                    e = EdgeTuple(G, tup)
                    if not squarefree_colon_reduction_check(G, e):
                        bad.append(str(e))
                return bad or 0

            self.run("multiplicity_reduction", {"n": n, "a": a, "samples": 100},
                     0, failures)

    def check_radical_colon(self):
        rng = random.Random(self.config.seed ^ 0x5AD1)
        cases = [(3, 1, 2), (3, 2, 2), (5, 1, 2)]
        for n, a, t in cases:
            if n > self.config.max_n:
                continue
            G = cubic_circulant(n, a)
            n_vars = G.n_vertices

            def failures(G=G, n_vars=n_vars, t=t, rng=rng):
                ordinary = edge_ideal(G).power(t)
                symbolic = symbolic_power(G, t)
                bad, used = [], 0
                while used < 200:
                    m = Monomial(tuple(rng.randint(0, 2) for _ in range(n_vars)))
                    if symbolic_membership(G, t, m):
                        continue
                    used += 1
                    if ordinary.colon(m).radical() != symbolic.colon(m).radical():
                        bad.append(str(m))
                return bad or 0

            self.run("radical_colon", {"n": n, "a": a, "t": t, "samples": 200},
                     0, failures)

    def check_decompose(self):
        for n in range(2, 9):
            for a in range(1, n):
                self.run("decompose", {"n": n, "a": a}, True,
                         lambda n=n, a=a: decompose_cubic(n, a).verified)

    def check_general_power(self):
        t = 2
        for n, a in ((3, 2), (6, 2)):
            exp = expected_reg_general(n, a, t)
            if n >= 6 and not self.config.extended:
                self.skip("general_power", {"n": n, "a": a, "t": t},
                          "12 variables; run with --extended")
                continue
            self.run("general_power",
                     {"n": n, "a": a, "t": t, "case": exp.formula_case},
                     exp.value,
                     lambda n=n, a=a, t=t:
                     self.reg(edge_ideal(cubic_circulant(n, a)).power(t)))

    def check_disjoint_union(self):
        k, t = 2, 2
        for n, a in ((3, 2), (3, 1)):
            G1 = cubic_circulant(n, a)
            if not self.config.extended:
                self.skip("disjoint_union", {"k": k, "n": n, "a": a, "t": t},
                          f"{k * 2 * n} variables; run with --extended")
                continue
            reg1 = self.reg(edge_ideal(G1))
            im1 = expected_im(n)
            if reg1 == im1 + 1:
                expected = k * reg1 - k + 2 * t - 1
            else:
                expected = k * reg1 - k + 2 * t - 2
            G = disjoint_union(G1, k)
            for kind, ideal_fn in (
                    ("power", lambda: edge_ideal(G).power(t)),
                    ("symbolic", lambda: symbolic_power(G, t))):
                self.run("disjoint_union",
                         {"k": k, "n": n, "a": a, "t": t, "kind": kind,
                          "reg_base": reg1},
                         expected, lambda f=ideal_fn: self.reg(f()))

    def check_betti_selfcheck(self):
        """Characteristic stability, Euler identity, beta_0 consistency."""
        ideals: list[tuple[str, MonomialIdeal]] = []
        for n, a in self.connected_cases():
            if n >= 7 and not self.config.extended:
                self.skip("betti_selfcheck", {"n": n, "a": a},
                          "check-prime pass at 14 variables; run with --extended")
                continue
            ideals.append((f"I(C_{2*n}({a},{n}))", self.power_ideal(n, a, 1)))
        for n, a, t in self.power_cases():
            ideals.append((f"I(C_{2*n}({a},{n}))^{t}", self.power_ideal(n, a, t)))
            ideals.append((f"I(C_{2*n}({a},{n}))^({t})", self.symbolic_ideal(n, a, t)))
        for name, I in ideals:
            def selfcheck(I=I):
                t1 = betti_table(I, self.config.prime, validate_euler=True,
                                 lattice_limit=self.config.lattice_limit)
                t2 = betti_table(I, self.config.check_prime,
                                 lattice_limit=self.config.lattice_limit)
                if t1.entries != t2.entries:
                    return "characteristic dependence"
                gens = {g.exponents for g in I.gens}
                if t1.generator_degrees() != gens:
                    return "beta_0 mismatch"
                return True

            self.run("betti_selfcheck", {"ideal": name}, True, selfcheck)

    def check_oracles(self):
        rng = random.Random(self.config.seed ^ 0x0AC1E)

        def failures():
            bad = 0
            for _ in range(2500):
                n_vars = rng.randint(2, 6)
                def rand_ideal():
                    gens = [Monomial(tuple(rng.randint(0, 3) for _ in range(n_vars)))
                            for _ in range(rng.randint(1, 4))]
                    return minimalize(n_vars, gens)
                I, J = rand_ideal(), rand_ideal()
                m = Monomial(tuple(rng.randint(0, 4) for _ in range(n_vars)))
                d = Monomial(tuple(rng.randint(0, 2) for _ in range(n_vars)))
                if I.intersect(J).contains(m) != (I.contains(m) and J.contains(m)):
                    bad += 1
                if I.colon(d).contains(m) != I.contains(m * d):
                    bad += 1
                # product membership against brute-force pairwise products
                brute = any((a * b).divides(m) for a in I.gens for b in J.gens)
                if I.product(J).contains(m) != brute:
                    bad += 1
                if I.power(2).product(I) != I.power(3):
                    bad += 1
            return bad

        self.run("oracles", {"cases": 10000}, 0, failures)


def run_suite(config: SuiteConfig) -> VerificationReport:
    runner = _Runner(config)
    dispatch = {
        "im": runner.check_im,
        "odd_cycle_neighborhood": runner.check_odd_cycle_neighborhood,
        "reg_base": runner.check_reg_base,
        "reg_power": runner.check_reg_power,
        "reg_symbolic": runner.check_reg_symbolic,
        "intermediate": runner.check_intermediate,
        "banerjee": runner.check_banerjee,
        "colon_reg_bound": runner.check_colon_reg_bound,
        "loop_dominance": runner.check_loop_dominance,
        "radical_splitting": runner.check_radical_splitting,
        "multiplicity_reduction": runner.check_multiplicity_reduction,
        "radical_colon": runner.check_radical_colon,
        "decompose": runner.check_decompose,
        "general_power": runner.check_general_power,
        "disjoint_union": runner.check_disjoint_union,
        "betti_selfcheck": runner.check_betti_selfcheck,
        "oracles": runner.check_oracles,
    }
    for name in ALL_CHECKS:
        if name in config.checks:
            dispatch[name]()
    runner.records.sort(key=CheckRecord.sort_key)
    return VerificationReport(
        version=__version__,
        seed=config.seed,
        primes=(config.prime, config.check_prime),
        limits={"max_n": config.max_n, "max_t": config.max_t,
                "lattice_limit": config.lattice_limit,
                "extended": config.extended},
        records=runner.records,
    )
