"""Named structural and theorem checks, aggregated by the verify command.

Every check is exact (rational arithmetic, equality not tolerance) and
deterministic: randomized checks draw from an RNG seeded by the instance
parameters, so repeated runs produce identical output.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import product

from .algebra import AlgebraElement, TruncParams, bracket, euler_dims, multiply
from .chain import TwistParams, homology, omega_dims, partial1_matrix, partial2_matrix
from .cochain import (
    Derivation,
    chi1_basis,
    cohomology,
    delta0_matrix,
    delta1_matrix,
    hamiltonian,
    is_poisson_derivation,
    normalize_one_cocycle,
    ring_table,
)

# Full Jacobi enumeration is cubic in the algebra dimension; past this bound
# the verify command samples triples instead (still exact, still seeded).
JACOBI_FULL_LIMIT = 30
JACOBI_SAMPLES = 5000


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str


def _rng(p: TruncParams, tag: str) -> random.Random:
    return random.Random(f"truncpoisson:{tag}:{p.a}:{p.b}")


def random_rational(rng: random.Random, span: int = 9) -> Fraction:
    return Fraction(rng.randint(-span, span), rng.randint(1, span))


def random_element(p: TruncParams, rng: random.Random, terms: int = 4) -> AlgebraElement:
    coeffs = {}
    for _ in range(terms):
        coeffs[(rng.randrange(p.a), rng.randrange(p.b))] = random_rational(rng)
    return AlgebraElement(p, coeffs)


def random_derivation(p: TruncParams, rng: random.Random) -> Derivation:
    n = len(chi1_basis(p))
    return Derivation.from_vector(p, [random_rational(rng) for _ in range(n)])


def random_twist(rng: random.Random) -> TwistParams:
    return TwistParams(random_rational(rng), random_rational(rng))


def random_cocycle(p: TruncParams, rng: random.Random) -> tuple[Derivation, Fraction, Fraction]:
    """A synthesized cocycle c10*d_{1,0} + c01*d'_{0,1} + delta_0(random)."""
    c10 = random_rational(rng)
    c01 = random_rational(rng)
    d = Derivation.basis_d(p, 1, 0).scale(c10) + Derivation.basis_dprime(p, 0, 1).scale(c01)
    return d + hamiltonian(random_element(p, rng)), c10, c01


def check_delta_complex(p: TruncParams) -> CheckResult:
    ok = (delta1_matrix(p) @ delta0_matrix(p)).is_zero()
    return CheckResult("delta_complex", ok, "delta1 . delta0 = 0")


def check_boundary_complex(p: TruncParams, n_random: int = 50) -> CheckResult:
    rng = _rng(p, "boundary")
    twists = [TwistParams.trivial(), TwistParams.nakayama(p)]
    twists += [random_twist(rng) for _ in range(n_random)]
    ok = all((partial1_matrix(p, t) @ partial2_matrix(p, t)).is_zero() for t in twists)
    return CheckResult("boundary_complex", ok, f"boundary1 . boundary2 = 0 for {len(twists)} twists")


def _jacobi_holds(p: TruncParams, triple) -> bool:
    e, f, g = (AlgebraElement.monomial(p, i, j) for (i, j) in triple)
    total = bracket(e, bracket(f, g)) + bracket(f, bracket(g, e)) + bracket(g, bracket(e, f))
    return total.is_zero()


def check_jacobi(p: TruncParams) -> CheckResult:
    monomials = list(p.monomials())
    if p.dim <= JACOBI_FULL_LIMIT:
        triples = product(monomials, repeat=3)
        detail = f"all {p.dim ** 3} monomial triples"
    else:
        rng = _rng(p, "jacobi")
        triples = (
            (rng.choice(monomials), rng.choice(monomials), rng.choice(monomials))
            for _ in range(JACOBI_SAMPLES)
        )
        detail = f"{JACOBI_SAMPLES} sampled monomial triples"
    ok = all(_jacobi_holds(p, t) for t in triples)
    return CheckResult("jacobi_identity", ok, detail)


def check_leibniz(p: TruncParams, n: int = 25) -> CheckResult:
    rng = _rng(p, "leibniz")
    ok = True
    for _ in range(n):
        u, v, w = (random_element(p, rng) for _ in range(3))
        lhs = bracket(multiply(u, v), w)
        rhs = multiply(u, bracket(v, w)) + multiply(bracket(u, w), v)
        if lhs != rhs:
            ok = False
            break
    return CheckResult("leibniz_rule", ok, f"{n} random triples")


def check_predicate_agreement(p: TruncParams, n_random: int = 100) -> CheckResult:
    rng = _rng(p, "predicate")
    d1 = delta1_matrix(p)
    derivations = chi1_basis(p) + [random_derivation(p, rng) for _ in range(n_random)]
    ok = all(
        is_poisson_derivation(d) == (not any(d1.apply(d.to_vector()))) for d in derivations
    )
    return CheckResult(
        "cocycle_predicate_matches_kernel", ok, f"basis + {n_random} random derivations"
    )


def check_normalization(p: TruncParams, n: int = 20) -> CheckResult:
    rng = _rng(p, "normalize")
    ok = True
    for _ in range(n):
        d, c10, c01 = random_cocycle(p, rng)
        res = normalize_one_cocycle(d)
        if (res.c10, res.c01) != (c10, c01):
            ok = False
            break
        recon = (
            Derivation.basis_d(p, 1, 0).scale(res.c10)
            + Derivation.basis_dprime(p, 0, 1).scale(res.c01)
            + hamiltonian(res.potential)
        )
        if recon != d:
            ok = False
            break
    return CheckResult("cocycle_normalization", ok, f"{n} synthesized cocycles")


def check_euler(p: TruncParams) -> CheckResult:
    rng = _rng(p, "euler")
    chi = euler_dims(p)
    omg = omega_dims(p)
    co = [cohomology(p, k).dimension for k in range(3)]
    oks = [
        chi.chi0 - chi.chi1 + chi.chi2 == 1,
        omg[0] - omg[1] + omg[2] == 1,
        co[0] - co[1] + co[2] == 1,
    ]
    for t in (TwistParams.trivial(), TwistParams.nakayama(p), random_twist(rng)):
        h = homology(p, t).dims
        oks.append(h[0] - h[1] + h[2] == 1)
    return CheckResult("euler_characteristics", all(oks), "cochain, form and homology complexes")


def check_ring_table(p: TruncParams) -> CheckResult:
    ok = ring_table(p).matches_reference()
    return CheckResult("ring_table_matches_reference", ok, "5x5 cup table vs reference ring")


def check_twisted_duality(p: TruncParams) -> CheckResult:
    co = tuple(cohomology(p, k).dimension for k in range(3))
    nak = homology(p, TwistParams.nakayama(p)).dims
    return CheckResult(
        "twisted_duality_dims", co == nak, f"cohomology {co} vs twisted homology {nak}"
    )


def check_duality_failure(p: TruncParams) -> CheckResult:
    h0 = homology(p, TwistParams.trivial()).dims[0]
    hp2 = cohomology(p, 2).dimension
    ok = h0 == p.a + p.b - 1 and h0 >= 3 and hp2 == 1 and h0 != hp2
    return CheckResult(
        "poincare_duality_failure", ok, f"dim HP_0 = {h0} vs dim HP^2 = {hp2}"
    )


def run_verify(p: TruncParams) -> list[CheckResult]:
    """All structural and theorem checks for one instance, in a fixed order."""
    return [
        check_delta_complex(p),
        check_boundary_complex(p),
        check_jacobi(p),
        check_leibniz(p),
        check_predicate_agreement(p),
        check_normalization(p),
        check_euler(p),
        check_ring_table(p),
        check_twisted_duality(p),
        check_duality_failure(p),
    ]
