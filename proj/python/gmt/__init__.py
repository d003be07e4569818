"""Flat chains, sharp fields and Cauchy fluxes."""

from ._gmt import (
    Chain,
    Complex,
    Error,
    FlatDecomposition,
    Map,
    SharpField,
    VoxelSet,
    boundary,
    density,
    embedding_check,
    flat_distance,
    flat_norm,
    flat_norm_oracle,
    koch_prefractal,
    leibniz_residual,
    lipschitz_constant,
    load_chain,
    load_map,
    load_voxels,
    mass,
    multiply,
    pushforward,
    run_scenario,
    scenarios,
)

__all__ = [name for name in dir() if not name.startswith("_")]
