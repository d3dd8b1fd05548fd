"""Post-editing error correction for ASR transcripts.

A recognized transcript is cut into fixed-width word windows, each window is
sent to a spelling-suggestion provider, and windows that draw a suggestion are
replaced by it.  Providers: a web search backend, a local n-gram model, and
cassette replay.
"""

from postedit.transcript import Transcript, TokenWindow, tokenize, concatenate
from postedit.suggest import (
    Suggestion,
    Suggester,
    ProviderError,
    TransportError,
    Cassette,
    CassetteMiss,
    ReplaySuggester,
    cassette_record,
    cassette_lookup,
)
from postedit.pipeline import (
    PipelineConfig,
    CorrectionRecord,
    PipelineError,
    post_edit,
    post_edit_parallel,
)

__all__ = [
    "Transcript",
    "TokenWindow",
    "tokenize",
    "concatenate",
    "Suggestion",
    "Suggester",
    "ProviderError",
    "TransportError",
    "Cassette",
    "CassetteMiss",
    "ReplaySuggester",
    "cassette_record",
    "cassette_lookup",
    "PipelineConfig",
    "CorrectionRecord",
    "PipelineError",
    "post_edit",
    "post_edit_parallel",
]
