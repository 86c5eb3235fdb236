"""Text -> code -> image evaluation harness for language models.

Subpackages:
    concepts     three-tier drawable-concept corpora (shapes grammar, objects, scenes)
    gateway      LLM backends, prompt building, code/answer extraction
    sandbox      isolated rendering of generated graphics code in four toolchains
    metrics      fidelity / diversity / realism scoring over pluggable embedders
    experiments  batch pipelines: generation, diversity, feedback, recognition
    studies      human-study statistics: 2AFC, bootstrap, drawing ingestion
    corpus       MixUP pretraining-corpus builder and k-NN retrieval eval
"""

__version__ = "0.1.0"
