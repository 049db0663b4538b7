"""Exact and numeric verification of minimal hypersurfaces.

Polynomials carry exact rational coefficients; fields are expression trees
evaluated with second-order forward differentiation. Reports and family
specs are plain dicts mirroring the JSON written by the ``minsurf`` CLI.
"""

import json

from ._minsurf import (
    DomainError,
    Polynomial,
    SamplingExhausted,
    ScalarField,
    SingularPointError,
    UsageError,
    arctan_split,
    ch_height,
    clifford_cone,
    graph_residual_at,
    graph_split,
    helicoid_height,
    inf_laplacian_at,
    laplacian_at,
    lawson_cone_r4,
    levelset_residual_at,
    p_laplacian_at,
    product_arg_cone,
    quintic_cone_4n2,
    sample_polynomial_zero_set,
    sample_zero_set,
    screw_superposition,
    sym_inf_laplacian,
    sym_laplacian,
    sym_levelset_residual,
    tan_graph_height,
    tan_multiple_rational,
    tkachev_cubic,
    tkachev_power_cone,
)
from . import _minsurf as _core

__all__ = [name for name in dir(_core) if not name.startswith("_") and not name.endswith("_json")] + [
    "catalog",
    "build",
    "verify_symbolic",
    "verify_numeric",
    "rotational_derivative",
    "verify_congruence",
]


def catalog():
    """Every family tag with its parameters and ambient dimension."""
    return json.loads(_core.catalog_json())


def build(family, **params):
    """Polynomial for algebraic families, ScalarField otherwise.

    >>> str(build("lawson_r4", N=2))
    'x1^2*y2 - 2*x1*y1*x2 - y1^2*y2'
    """
    spec = json.dumps({"family": family, **params})
    poly = _core.build_polynomial(spec)
    return poly if poly is not None else _core.build_field(spec)


def verify_symbolic(polynomial):
    return json.loads(_core.verify_cone_symbolic_json(polynomial))


def verify_numeric(field, checks, seed=0, count=100, range=2.0, tol=1e-8, polynomial_degree=None):
    if isinstance(field, Polynomial):
        polynomial_degree = field.total_degree if polynomial_degree is None else polynomial_degree
        field = ScalarField.from_polynomial(field)
    if not isinstance(checks, str):
        checks = ",".join(checks)
    return json.loads(
        _core.verify_field_numeric_json(field, checks, seed, count, range, tol, polynomial_degree)
    )


def rotational_derivative(field, pairs, expected, seed=0, count=100, tol=1e-9):
    return json.loads(_core.rotational_derivative_json(field, pairs, expected, seed, count, tol))


def verify_congruence(p, q, matrix, scale, seed=0, count=100, tol=1e-9):
    return json.loads(_core.verify_congruence_json(p, q, matrix, scale, seed, count, tol))
