"""Truncated polynomial (jet) arithmetic in holomorphic increments.

A Jet is a multivariate polynomial in increments dx_1..dx_n, truncated at a
fixed total degree ("order").  Coefficients are complex; antiholomorphic
dependence never appears because conjugated quantities are evaluated at the
base point and folded into the coefficients.  An order-p jet of a function
composed through p first-order operators yields the exact value at the base
point: each application consumes one order.

No sparsity tricks or CAS: a dict keyed by exponent tuples is plenty at the
working sizes (n <= M(M-1)/2 variables, order <= max monomial degree).
"""

from __future__ import annotations


class Jet:
    __slots__ = ("nvars", "order", "coeffs")

    def __init__(self, nvars: int, order: int, coeffs: dict[tuple[int, ...], complex] | None = None):
        if order < 0:
            raise ValueError("jet order must be >= 0")
        self.nvars = nvars
        self.order = order
        self.coeffs: dict[tuple[int, ...], complex] = {}
        for exps, c in (coeffs or {}).items():
            if len(exps) != nvars:
                raise ValueError("exponent tuple length mismatch")
            if sum(exps) <= order and c != 0:
                self.coeffs[exps] = self.coeffs.get(exps, 0) + complex(c)

    # -- constructors -------------------------------------------------------

    @classmethod
    def constant(cls, value: complex, nvars: int, order: int) -> "Jet":
        out = cls(nvars, order)
        v = complex(value)
        if v != 0:
            out.coeffs[(0,) * nvars] = v
        return out

    @classmethod
    def variable(cls, index: int, base: complex, nvars: int, order: int) -> "Jet":
        """The coordinate function x_index expanded at base: base + dx_index."""
        out = cls.constant(base, nvars, order)
        if order >= 1:
            exps = tuple(1 if i == index else 0 for i in range(nvars))
            out.coeffs[exps] = out.coeffs.get(exps, 0) + 1.0
            if out.coeffs[exps] == 0:
                del out.coeffs[exps]
        return out

    # -- ring operations ----------------------------------------------------

    def _check(self, other: "Jet"):
        if self.nvars != other.nvars:
            raise ValueError("jets over different variable sets")

    def __add__(self, other):
        if not isinstance(other, Jet):
            other = Jet.constant(other, self.nvars, self.order)
        self._check(other)
        order = min(self.order, other.order)
        out = Jet(self.nvars, order)
        for exps, c in self.coeffs.items():
            if sum(exps) <= order:
                out.coeffs[exps] = c
        for exps, c in other.coeffs.items():
            if sum(exps) <= order:
                s = out.coeffs.get(exps, 0) + c
                if s != 0:
                    out.coeffs[exps] = s
                elif exps in out.coeffs:
                    del out.coeffs[exps]
        return out

    __radd__ = __add__

    def __neg__(self):
        out = Jet(self.nvars, self.order)
        out.coeffs = {e: -c for e, c in self.coeffs.items()}
        return out

    def __sub__(self, other):
        if not isinstance(other, Jet):
            other = Jet.constant(other, self.nvars, self.order)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, Jet):
            out = Jet(self.nvars, self.order)
            s = complex(other)
            if s != 0:
                out.coeffs = {e: s * c for e, c in self.coeffs.items()}
            return out
        self._check(other)
        order = min(self.order, other.order)
        out = Jet(self.nvars, order)
        acc = out.coeffs
        for ea, ca in self.coeffs.items():
            da = sum(ea)
            if da > order:
                continue
            for eb, cb in other.coeffs.items():
                if da + sum(eb) > order:
                    continue
                key = tuple(a + b for a, b in zip(ea, eb))
                s = acc.get(key, 0) + ca * cb
                if s != 0:
                    acc[key] = s
                elif key in acc:
                    del acc[key]
        return out

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0 or n != int(n):
            raise ValueError("jet powers must be non-negative integers")
        result = Jet.constant(1.0, self.nvars, self.order)
        base = self
        n = int(n)
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def derivative(self, index: int) -> "Jet":
        """d/dx_index; the result is trustworthy one order lower."""
        if self.order < 1:
            raise ValueError("cannot differentiate an order-0 jet")
        out = Jet(self.nvars, self.order - 1)
        for exps, c in self.coeffs.items():
            e = exps[index]
            if e == 0:
                continue
            new = exps[:index] + (e - 1,) + exps[index + 1:]
            if sum(new) <= out.order:
                out.coeffs[new] = out.coeffs.get(new, 0) + e * c
        return out

    def truncate(self, order: int) -> "Jet":
        if order >= self.order:
            # widening is not allowed: higher coefficients are unknown
            if order > self.order:
                raise ValueError("cannot raise the order of a jet")
            return self
        out = Jet(self.nvars, order)
        out.coeffs = {e: c for e, c in self.coeffs.items() if sum(e) <= order}
        return out

    def reciprocal(self, order: int | None = None) -> "Jet":
        """Multiplicative inverse as a truncated geometric series."""
        order = self.order if order is None else min(order, self.order)
        c0 = self.value
        if c0 == 0:
            raise ZeroDivisionError("jet has zero constant term")
        work = self.truncate(order)
        g = (work - c0) * (1.0 / c0)  # so self = c0 (1 + g), g has no constant term
        acc = Jet.constant(1.0, self.nvars, order)
        pw = Jet.constant(1.0, self.nvars, order)
        for _ in range(order):
            pw = pw * (-g)
            acc = acc + pw
        return acc * (1.0 / c0)

    # -- inspection -----------------------------------------------------------

    @property
    def value(self) -> complex:
        """Constant term: the function value at the base point."""
        return self.coeffs.get((0,) * self.nvars, 0j)

    def coefficient(self, *exps: int) -> complex:
        return self.coeffs.get(tuple(exps), 0j)

    def evaluate(self, dx) -> complex:
        total = 0j
        for exps, c in self.coeffs.items():
            term = c
            for x, e in zip(dx, exps):
                for _ in range(e):
                    term *= x
            total += term
        return total

    def isclose(self, other: "Jet", tol: float = 1e-12) -> bool:
        keys = set(self.coeffs) | set(other.coeffs)
        return all(abs(self.coeffs.get(k, 0) - other.coeffs.get(k, 0)) <= tol for k in keys)

    def __repr__(self):
        inside = ", ".join(f"{e}: {c:.6g}" for e, c in sorted(self.coeffs.items()))
        return f"Jet(order={self.order}, {{{inside}}})"
