"""Pattern-sampled shapelet classification for time series.

Discretizes each series over a grid of (alphabet, window) resolutions,
scores every symbolic substring by class association, samples the
strongest patterns from a weighted trie, recovers their real-valued
subsequences, and re-encodes the dataset as min-distance features for
an off-the-shelf classifier.
"""

from .dataset import (
    LabeledDataset,
    SplitPair,
    UcrFormatError,
    load_ucr,
    resample_split,
    save_ucr,
    znormalize,
    znormalize_dataset,
)
from .discretizer import (
    DiscretizedDataset,
    SaxParams,
    compute_breakpoints,
    discretize,
    paa,
    paa_length,
    sax,
    sax_text,
)
from .forest import RandomForest
from .pattern_index import PatternIndex, decode_pattern, encode_pattern
from .pipeline import (
    ExperimentResult,
    MergedFeatureSet,
    NoPatternsError,
    PipelineConfig,
    SkippedCell,
    build_report,
    evaluate,
    fit_transform,
    merge,
    run_experiment,
    train_classifier,
)
from .quality import (
    ContingencyTable,
    chi2,
    contingency,
    normalize,
    pattern_quality,
    scale,
)
from .sampler_trie import SamplerTrie, fit_sampler
from .shapelet_transform import (
    FeatureMatrix,
    Shapelet,
    create_feature_sets,
    min_distance,
    reverse_lookup,
)
from .synthgen import SynthSpec, generate

__version__ = "0.1.0"

__all__ = [
    "LabeledDataset",
    "SplitPair",
    "UcrFormatError",
    "load_ucr",
    "save_ucr",
    "znormalize",
    "znormalize_dataset",
    "resample_split",
    "SaxParams",
    "DiscretizedDataset",
    "compute_breakpoints",
    "paa",
    "paa_length",
    "sax",
    "sax_text",
    "discretize",
    "ContingencyTable",
    "contingency",
    "chi2",
    "normalize",
    "scale",
    "pattern_quality",
    "PatternIndex",
    "encode_pattern",
    "decode_pattern",
    "SamplerTrie",
    "fit_sampler",
    "Shapelet",
    "FeatureMatrix",
    "reverse_lookup",
    "min_distance",
    "create_feature_sets",
    "RandomForest",
    "PipelineConfig",
    "SkippedCell",
    "MergedFeatureSet",
    "ExperimentResult",
    "NoPatternsError",
    "fit_transform",
    "merge",
    "train_classifier",
    "evaluate",
    "run_experiment",
    "build_report",
    "SynthSpec",
    "generate",
]
