"""Exact super-derivations and local super-derivations of finite-dimensional Lie superalgebras."""

from .derivations import (
    DerivationCoordinates,
    DerivationSpace,
    LinearMap,
    ad,
    decompose,
    delta_map,
    derivation_space,
    inner_space,
    is_derivation,
    verify_theorem_der,
)
from .localder import (
    CertificationReport,
    builtin_probes,
    certify,
    is_local_value,
    orbit,
    probe_closure,
    probe_constraint,
    refute,
)
from .replay import replay_lemmas
from .superalg import SuperAlgebra, bracket, catalog, center, from_table, is_ideal, validate

__version__ = "0.1.0"
