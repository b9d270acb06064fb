"""Citation-graph analytics for research evaluation.

Computes the indirect H2 index and the surrounding evaluation suite
(Hirsch h, single-publication h, relative citation impact classes,
percentile benchmarks) over immutable citation-corpus snapshots, and
reproduces submission-gaming and robustness analyses on user-supplied or
synthetic corpora.
"""

from . import errors
from ._kernels import BACKEND as KERNEL_BACKEND
from .benchmarks import (
    PERCENTILE_LEVELS,
    BenchmarkTable,
    Distribution,
    PercentileMembership,
    RciClass,
    RCI_CLASS_ORDER,
    YearBenchmark,
    build_benchmark,
    classify_rci,
    distribution_export,
    percentile_membership,
    percentile_threshold,
    rci,
    render_benchmark_text,
)
from .classification import (
    EligibilityPartition,
    SubmissionBounds,
    expand_reassignment,
    partition,
    render_partition_csv,
    submission_bounds,
)
from .corpus import (
    Corpus,
    Institution,
    JournalRecord,
    Publication,
    Window,
    export_corpus,
    ingest,
    load_archive,
    normalize_issn,
    save_archive,
    select,
)
from .evaluation import (
    Band,
    BandScheme,
    ConfusionResult,
    GamingResult,
    MetricReport,
    OptimizeResult,
    ScatterResult,
    confusion_matrix,
    gaming_analysis,
    h2_percentile_table,
    h_vs_h2_scatter,
    optimize_submission,
    predict_h2,
    rec_table,
    render_rec_table_text,
    report_for_set,
    size_adjusted_h2,
)
from .metrics import (
    DEFAULT_OPTIONS,
    IndexValue,
    MetricOptions,
    citation_count,
    citation_counts_all,
    h_index,
    h_index_keyed,
    hirsch_of_set,
    indirect_h2,
    pearson_correlation,
    single_publication_h,
    single_publication_h_all,
)
from .synth import SynthSpec, synthesize_corpus

__version__ = "0.1.0"
