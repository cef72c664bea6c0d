"""randef: compression-based subjective probability toolkit.

Step-size Huffman codec for lottery sequences, computable typicality and
surprise predicates, an MDL-style observer with a subjective-information
ledger, and a constructive generator of conjunction-effect witnesses.
"""

from .errors import RandefError
from .stepcode import (
    CODEBOOK,
    BitString,
    Codebook,
    CodecParams,
    DEFAULT_PARAMS,
    LotterySequence,
    StepVector,
    baseline_bits,
    build_codebook,
    compressed_length,
    decode,
    deficiency,
    encode,
    to_steps,
)
from .models import (
    ConditionalCostReport,
    ModelDescription,
    PatternCode,
    QuantizedPMF,
    SurpriseThreshold,
    conditional_cost,
    is_optimal,
    is_surprising,
    is_typical,
    model_update_cost,
    shannon_fano_bits,
    subjective_probability,
)
from .observer import (
    CandidateFamily,
    ObserverState,
    UpdateRecord,
    observe,
    run_scenario,
    select_model,
)
from .conjunction import (
    ConjunctionWitness,
    build_witness,
    minimal_n,
    most_frequent_block,
)
from .lotto import (
    BitBand,
    CorpusStats,
    DrawCorpus,
    RankingResult,
    corpus_stats,
    enumerate_all,
    generate_distractor,
    load_corpus,
    rank_candidates,
)

__version__ = "0.1.0"
