"""Hybrid quantum-classical one-class classification (NQSVDD)."""

from _nqsvdd import (  # noqa: F401
    Model,
    TrainConfig,
    amplitude_encode,
    auc,
    count_parameters,
    depolarizing2_kraus,
    expectation,
    make_toy_task,
    run_experiment,
    select_observables,
    su4_matrix,
    thermal_relaxation_kraus,
    u3_matrix,
    zz_embedding_state,
)

__all__ = [
    "Model",
    "TrainConfig",
    "amplitude_encode",
    "auc",
    "count_parameters",
    "depolarizing2_kraus",
    "expectation",
    "make_toy_task",
    "run_experiment",
    "select_observables",
    "su4_matrix",
    "thermal_relaxation_kraus",
    "u3_matrix",
    "zz_embedding_state",
]
