"""Social-media sentiment mining for product-safety monitoring.

The package covers the full workflow: collecting raw JSON posts
(`collector`), cleaning them into a corpus (`corpus`), tokenizing and
building tf-idf document-term matrices (`preprocess`), lexicon-based
scoring (`lexicon`), Naive Bayes classification bootstrapped from those
scores (`classifier`), and evaluation tables (`evaluate`).  The
`sentilens` command line wires the stages into a pipeline.
"""

from sentilens._kernels import KERNEL_BACKEND

__version__ = "0.1.0"

__all__ = ["KERNEL_BACKEND", "__version__"]
