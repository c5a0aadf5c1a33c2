"""Finite linear combinations of tensor monomials in catalog generators.

Polynomial observables live in the tensor algebra over the generator span:
no reordering, no commutation relations are applied, so E(1,2) ox E(2,1) and
E(2,1) ox E(1,2) are distinct monomials.  The formal adjoint reverses tensor
factors, daggers each generator (E(k,l) -> E(l,k), H(k) -> H(k)) and
conjugates scalar coefficients; in every unitary representation this matches
the conjugate transpose of the image matrix.
"""

from __future__ import annotations

from .algebra import AlgebraSpec

# A tensor monomial is an ordered tuple of catalog generator names; the empty
# tuple denotes the algebra unit (scalar slot).
Monomial = tuple[str, ...]


class AbstractOperator:
    """Immutable linear combination of tensor monomials with complex coefficients."""

    __slots__ = ("spec", "terms")

    def __init__(self, spec: AlgebraSpec, terms: dict[Monomial, complex] | None = None):
        clean: dict[Monomial, complex] = {}
        for mono, coeff in (terms or {}).items():
            mono = tuple(mono)
            for name in mono:
                spec.sort_index(name)  # raises for names outside the catalog
            c = complex(coeff)
            if c != 0:
                clean[mono] = clean.get(mono, 0) + c
        object.__setattr__(self, "spec", spec)
        object.__setattr__(self, "terms", {m: c for m, c in clean.items() if c != 0})

    def __setattr__(self, *_):
        raise AttributeError("AbstractOperator is immutable")

    # -- algebra ----------------------------------------------------------

    def __add__(self, other):
        other = self._coerce(other)
        merged = dict(self.terms)
        for m, c in other.terms.items():
            merged[m] = merged.get(m, 0) + c
        return AbstractOperator(self.spec, merged)

    def __radd__(self, other):
        return self.__add__(other)

    def __sub__(self, other):
        return self + (-1) * self._coerce(other)

    def __neg__(self):
        return (-1) * self

    def __mul__(self, scalar):
        if isinstance(scalar, AbstractOperator):
            raise TypeError("use tensor() for operator products; '*' is scalar multiplication")
        s = complex(scalar)
        return AbstractOperator(self.spec, {m: s * c for m, c in self.terms.items()})

    __rmul__ = __mul__

    def tensor(self, other: "AbstractOperator") -> "AbstractOperator":
        """Tensor product, bilinear over the terms; unit monomials act as scalars."""
        other = self._coerce(other)
        out: dict[Monomial, complex] = {}
        for ma, ca in self.terms.items():
            for mb, cb in other.terms.items():
                m = ma + mb
                out[m] = out.get(m, 0) + ca * cb
        return AbstractOperator(self.spec, out)

    def _coerce(self, other) -> "AbstractOperator":
        if isinstance(other, AbstractOperator):
            if other.spec.M != self.spec.M:
                raise ValueError("operators over different algebra specs")
            return other
        return AbstractOperator(self.spec, {(): complex(other)})

    # -- structure --------------------------------------------------------

    @property
    def degree(self) -> int:
        """Largest tensor degree among the terms (0 for a pure scalar or zero)."""
        return max((len(m) for m in self.terms), default=0)

    @property
    def scalar_part(self) -> complex:
        return self.terms.get((), 0j)

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def is_degree_one(self) -> bool:
        """True for elements of the generator span: no scalar slot, all factors single."""
        return bool(self.terms) and all(len(m) == 1 for m in self.terms)

    def monomials(self) -> list[Monomial]:
        return sorted(self.terms, key=self._mono_key)

    def _mono_key(self, mono: Monomial):
        idx = self.spec.sort_index
        return (len(mono), tuple(idx(name) for name in mono))

    def __eq__(self, other):
        return (
            isinstance(other, AbstractOperator)
            and self.spec.M == other.spec.M
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash((self.spec.M, frozenset(self.terms.items())))

    def __repr__(self):
        return f"AbstractOperator(M={self.spec.M}, {format_operator(self)!r})"

    def isclose(self, other: "AbstractOperator", tol: float = 1e-12) -> bool:
        keys = set(self.terms) | set(self._coerce(other).terms)
        return all(abs(self.terms.get(k, 0) - other.terms.get(k, 0)) <= tol for k in keys)


def operator_from_matrix_element(spec: AlgebraSpec, name: str) -> AbstractOperator:
    """Degree-1 operator for a single catalog generator."""
    spec.sort_index(name)
    return AbstractOperator(spec, {(name,): 1.0})


def scalar_operator(spec: AlgebraSpec, value: complex) -> AbstractOperator:
    return AbstractOperator(spec, {(): complex(value)})


def formal_adjoint(op: AbstractOperator) -> AbstractOperator:
    """The dagger: reverse factors, dagger generators, conjugate coefficients."""
    spec = op.spec
    out: dict[Monomial, complex] = {}
    for mono, coeff in op.terms.items():
        rev = tuple(spec.adjoint_name(name) for name in reversed(mono))
        out[rev] = out.get(rev, 0) + coeff.conjugate()
    return AbstractOperator(spec, out)


def is_abstractly_selfadjoint(op: AbstractOperator) -> bool:
    """Structural equality of op with its formal adjoint after canonicalization."""
    return op == formal_adjoint(op)


def monomial_decomposition(op: AbstractOperator) -> list[tuple[complex, Monomial]]:
    """Terms as (coefficient, monomial) pairs in canonical order.

    The scalar part appears as the empty monomial, consistent with treating
    scalars as multiples of the algebra unit.
    """
    return [(op.terms[m], m) for m in op.monomials()]


def _format_scalar(c: complex) -> str:
    """Render a complex coefficient in the DSL's scalar grammar.

    Pure reals and pure imaginaries come out bare ('2.5', '1.5i'); general
    complex values are parenthesized sums.  repr() of the float keeps the
    shortest round-trip form.
    """

    def num(x: float) -> str:
        r = repr(float(x))
        return r[:-2] if r.endswith(".0") else r

    re_, im_ = c.real, c.imag
    if im_ == 0:
        return num(re_) if re_ >= 0 else f"-{num(-re_)}"
    if re_ == 0:
        return f"{num(im_)}i" if im_ >= 0 else f"-{num(-im_)}i"
    sign = "+" if im_ >= 0 else "-"
    return f"({num(re_) if re_ >= 0 else '-' + num(-re_)} {sign} {num(abs(im_))}i)"


def format_operator(op: AbstractOperator) -> str:
    """Canonical text form, parseable by parse_hamiltonian (round-trip stable)."""
    if op.is_zero:
        return "0"
    parts: list[str] = []
    for coeff, mono in monomial_decomposition(op):
        if not mono:
            body = _format_scalar(coeff)
        else:
            chain = " ox ".join(mono)
            if coeff == 1:
                body = chain
            else:
                body = f"{_format_scalar(coeff)}*{chain}"
        parts.append(body)
    text = parts[0]
    for body in parts[1:]:
        if body.startswith("-"):
            text += f" - {body[1:]}"
        else:
            text += f" + {body}"
    return text
