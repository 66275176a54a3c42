"""Metaphor comprehension as stochastic functor search over association networks.

The package models the meaning of an image as its coslice in a thin category
of elicited associations, and metaphor comprehension as the construction of a
natural transformation from the trivial composition functor to a more
informative partial functor between the source's and target's coslices.  Two
search algorithms (object-based and relation-based), two selection policies
(hardmax and softmax with inverse temperature beta), Monte Carlo ensembles,
and three output measures (data fit, width, novelty) are provided, wired
together by a manifest-driven CLI.
"""

from .category import (
    Correspondence,
    CosliceView,
    ElicitedCategory,
    FunctorMap,
    Image,
    LatentCategory,
    LawReport,
    add_metaphor_arrow,
    bmf,
    build_latent,
    check_functor_laws,
    coslice,
    elicit_initial,
    latent_from_labels,
)
from .errors import InputError, TintError
from .evaluation import (
    EvaluationReport,
    data_fit,
    evaluate_ensemble,
    mean_width,
    novelty,
    per_source_data_fit,
    width,
)
from .exploration import (
    SelectionPolicy,
    TrialConfig,
    TrialOutcome,
    explore_object_based,
    explore_relation_based,
    hardmax,
    make_trial_config,
    run_trial,
    select,
    softmax,
    triangle_distance,
)
from .ingestion import (
    AssociationSurvey,
    InterpretationData,
    SimilarityMatrix,
    load_interpretation,
    load_similarity,
    load_survey,
    save_survey,
    strength_to_weight,
    survey_to_latent,
)
from .simulation import (
    DEFAULT_BETA_GRID,
    SweepSpec,
    TrialEnsemble,
    log_beta_grid,
    run_ensemble,
    run_sweep,
    sweep_points,
)

__version__ = "0.1.0"

__all__ = [
    "AssociationSurvey",
    "Correspondence",
    "CosliceView",
    "DEFAULT_BETA_GRID",
    "ElicitedCategory",
    "EvaluationReport",
    "FunctorMap",
    "Image",
    "InputError",
    "InterpretationData",
    "LatentCategory",
    "LawReport",
    "SelectionPolicy",
    "SimilarityMatrix",
    "SweepSpec",
    "TintError",
    "TrialConfig",
    "TrialEnsemble",
    "TrialOutcome",
    "add_metaphor_arrow",
    "bmf",
    "build_latent",
    "check_functor_laws",
    "coslice",
    "data_fit",
    "elicit_initial",
    "evaluate_ensemble",
    "explore_object_based",
    "explore_relation_based",
    "hardmax",
    "latent_from_labels",
    "load_interpretation",
    "load_similarity",
    "load_survey",
    "log_beta_grid",
    "make_trial_config",
    "mean_width",
    "novelty",
    "per_source_data_fit",
    "run_ensemble",
    "run_sweep",
    "run_trial",
    "save_survey",
    "select",
    "softmax",
    "strength_to_weight",
    "survey_to_latent",
    "sweep_points",
    "triangle_distance",
    "width",
]
