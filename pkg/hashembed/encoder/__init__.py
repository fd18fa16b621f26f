"""Random-projection hashing encoder."""

from hashembed.encoder.collisions import (
    CollisionTrial,
    collision_experiment,
    count_collisions,
    write_collision_csv,
)
from hashembed.core.seeding import derive_seed, make_rng
from hashembed.encoder.hashing import (
    encode,
    project,
    projections,
    random_codes,
    random_vector,
    select_threshold,
)

__all__ = [
    "CollisionTrial",
    "collision_experiment",
    "count_collisions",
    "write_collision_csv",
    "derive_seed",
    "encode",
    "make_rng",
    "project",
    "projections",
    "random_codes",
    "random_vector",
    "select_threshold",
]
