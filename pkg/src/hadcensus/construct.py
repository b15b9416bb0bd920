"""Hadamard matrix builders: Sylvester, Paley I, Paley II, recipe trees,
and the (k, epsilon) -> certified order-2^l*k pipeline."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

import numpy as np

from . import arith, solver
from .errors import (
    DomainError,
    NotPrimeError,
    ResidueClassError,
    SizeError,
    UnsupportedFieldError,
)
from .matrix import MAX_ORDER_DEFAULT, PlusMinusMatrix, kronecker

SYLVESTER = "sylvester"
PALEY_I = "paley_i"
PALEY_II = "paley_ii"
KRONECKER = "kronecker"


@dataclass(frozen=True)
class ConstructionPlan:
    """Recipe tree certifying how an order-n Hadamard matrix is built."""

    kind: str
    claimed_order: int
    certified: bool
    t: Optional[int] = None  # sylvester leaf
    q: Optional[int] = None  # paley leaves
    left: Optional["ConstructionPlan"] = None  # kronecker node
    right: Optional["ConstructionPlan"] = None

    def to_json_dict(self):
        d = {"kind": self.kind, "claimed_order": self.claimed_order,
             "certified": self.certified}
        if self.kind == SYLVESTER:
            d["t"] = self.t
        elif self.kind in (PALEY_I, PALEY_II):
            d["q"] = self.q
        else:
            d["left"] = self.left.to_json_dict()
            d["right"] = self.right.to_json_dict()
        return d

    @classmethod
    def from_json_dict(cls, d):
        kind = d["kind"]
        if kind == SYLVESTER:
            return sylvester_leaf(d["t"])
        if kind == PALEY_I:
            return paley_i_leaf(d["q"])
        if kind == PALEY_II:
            return paley_ii_leaf(d["q"])
        if kind == KRONECKER:
            return kronecker_node(
                cls.from_json_dict(d["left"]), cls.from_json_dict(d["right"])
            )
        raise ValueError(f"unknown plan node kind {kind!r}")


def _check_paley_prime(q, kind):
    r = arith.is_prime(q)
    if not r:
        factors = arith.factorize(q) if q > 1 else {}
        if len(factors) == 1:
            raise UnsupportedFieldError(
                f"{q} is a prime power, not a prime; prime-power Paley "
                "fields are unsupported"
            )
        raise NotPrimeError(f"{q} is not prime")
    want = 3 if kind == PALEY_I else 1
    if q % 4 != want:
        raise ResidueClassError(f"{kind} requires q = {want} mod 4, got q = {q}")
    return r


def sylvester_leaf(t):
    if t < 0:
        raise DomainError("t must be nonnegative")
    return ConstructionPlan(SYLVESTER, 1 << t, True, t=t)


def paley_i_leaf(q):
    r = _check_paley_prime(q, PALEY_I)
    return ConstructionPlan(PALEY_I, q + 1, r.is_certified, q=q)


def paley_ii_leaf(q):
    r = _check_paley_prime(q, PALEY_II)
    return ConstructionPlan(PALEY_II, 2 * (q + 1), r.is_certified, q=q)


def kronecker_node(left, right):
    return ConstructionPlan(
        KRONECKER,
        left.claimed_order * right.claimed_order,
        left.certified and right.certified,
        left=left,
        right=right,
    )


def sylvester(t, max_order=None):
    """Order-2^t Sylvester matrix by recursive doubling."""
    limit = MAX_ORDER_DEFAULT if max_order is None else max_order
    if t < 0:
        raise DomainError("t must be nonnegative")
    if (1 << t) > limit:
        raise SizeError(f"order 2^{t} exceeds max_order {limit}")
    rows = [0]
    size = 1
    for _ in range(t):
        mask = (1 << size) - 1
        rows = [r | (r << size) for r in rows] + [
            r | ((~r & mask) << size) for r in rows
        ]
        size *= 2
    return PlusMinusMatrix(size, rows)


def _quadratic_character_row(q):
    """chi(d) for d = 0..q-1 as an int8 array (chi(0) = 0)."""
    chi = np.full(q, -1, dtype=np.int8)
    sq = (np.arange(1, (q - 1) // 2 + 1, dtype=np.int64) ** 2) % q
    chi[sq] = 1
    chi[0] = 0
    return chi


def paley_I(q, max_order=None):
    """Paley construction I: order q+1 for prime q = 3 mod 4."""
    limit = MAX_ORDER_DEFAULT if max_order is None else max_order
    _check_paley_prime(q, PALEY_I)
    if q + 1 > limit:
        raise SizeError(f"order {q + 1} exceeds max_order {limit}")
    chi = _quadratic_character_row(q)
    # Core bit pattern: bit d set where an entry chi(d) is -1; the diagonal
    # (d = 0) is set to -1.  Row i of the core is the rotation by i.
    pattern = 1  # d = 0
    for d in range(1, q):
        if chi[d] < 0:
            pattern |= 1 << d
    mask = (1 << q) - 1
    rows = [0]  # border row of +1
    for i in range(q):
        core = ((pattern << i) | (pattern >> (q - i))) & mask if i else pattern
        rows.append(core << 1)  # border column of +1
    return PlusMinusMatrix(q + 1, rows)


def paley_II(q, max_order=None):
    """Paley construction II: order 2(q+1) for prime q = 1 mod 4."""
    limit = MAX_ORDER_DEFAULT if max_order is None else max_order
    _check_paley_prime(q, PALEY_II)
    n = 2 * (q + 1)
    if n > limit:
        raise SizeError(f"order {n} exceeds max_order {limit}")
    chi = _quadratic_character_row(q)
    # Symmetric conference matrix of order q+1 (chi(-1) = +1 here).
    m = q + 1
    C = np.empty((m, m), dtype=np.int8)
    C[0, 0] = 0
    C[0, 1:] = 1
    C[1:, 0] = 1
    for i in range(q):
        C[1 + i, 1:] = np.roll(chi, i)
    # H = C (x) [[1,1],[1,-1]] + I (x) [[1,-1],[-1,-1]]
    eye = np.eye(m, dtype=np.int8)
    H = np.empty((n, n), dtype=np.int8)
    H[0::2, 0::2] = C + eye
    H[0::2, 1::2] = C - eye
    H[1::2, 0::2] = C - eye
    H[1::2, 1::2] = -C - eye
    return PlusMinusMatrix.from_dense(H)


def build_plan(plan: ConstructionPlan, max_order=None) -> PlusMinusMatrix:
    """Materialize a recipe tree bottom-up."""
    limit = MAX_ORDER_DEFAULT if max_order is None else max_order
    if plan.claimed_order > limit:
        raise SizeError(
            f"order {plan.claimed_order} exceeds max_order {limit}"
        )
    if plan.kind == SYLVESTER:
        return sylvester(plan.t, max_order=limit)
    if plan.kind == PALEY_I:
        return paley_I(plan.q, max_order=limit)
    if plan.kind == PALEY_II:
        return paley_II(plan.q, max_order=limit)
    if plan.kind == KRONECKER:
        left = build_plan(plan.left, max_order=limit)
        right = build_plan(plan.right, max_order=limit)
        return kronecker(left, right, max_order=limit)
    raise ValueError(f"unknown plan node kind {plan.kind!r}")


def plan_for(k, epsilon, allow_probable=True) -> ConstructionPlan:
    """Plan a Hadamard matrix of order 2^l*k with l <= 2 + epsilon*log2(k).

    k = 1 maps to the order-4 Sylvester matrix; otherwise the smallest
    exponent m with 2^m*k - 1 prime inside the window selects a Paley leaf
    (Paley II doubling when m = 1, Paley I otherwise).
    """
    epsilon = Fraction(epsilon)
    if k < 1 or k % 2 == 0:
        raise DomainError("k must be odd and positive")
    if k == 1:
        return sylvester_leaf(2)
    result = solver.find_m(k, epsilon, allow_probable=allow_probable,
                           raise_on_failure=True)
    m = result.found_m
    if m == 1:
        return paley_ii_leaf(2 * k - 1)  # order 2(2k) = 2^2 * k
    return paley_i_leaf((1 << m) * k - 1)  # order 2^m * k


def hadamard_for(k, epsilon, max_order=None, allow_probable=True):
    """(plan, matrix-or-None); the matrix is materialized only when the
    claimed order fits under max_order."""
    limit = MAX_ORDER_DEFAULT if max_order is None else max_order
    plan = plan_for(k, epsilon, allow_probable=allow_probable)
    matrix = build_plan(plan, max_order=limit) if plan.claimed_order <= limit else None
    return plan, matrix
