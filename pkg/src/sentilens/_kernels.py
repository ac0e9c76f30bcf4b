"""Selects the compiled kernel backend when available, pure Python otherwise.

Set SENTILENS_PURE=1 to force the pure-Python kernels even when the
compiled extension is installed (used by the benchmark and the parity
tests).
"""

import os

if os.environ.get("SENTILENS_PURE") == "1":
    from sentilens._kernels_py import (  # noqa: F401
        accumulate_log_posteriors,
        porter_stem,
        score_tokens,
    )

    KERNEL_BACKEND = "pure-python"
else:
    try:
        from sentilens._kernels_c import (  # noqa: F401
            accumulate_log_posteriors,
            porter_stem,
            score_tokens,
        )

        KERNEL_BACKEND = "compiled"
    except ImportError:
        from sentilens._kernels_py import (  # noqa: F401
            accumulate_log_posteriors,
            porter_stem,
            score_tokens,
        )

        KERNEL_BACKEND = "pure-python"
