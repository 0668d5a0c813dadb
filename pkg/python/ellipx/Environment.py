from typing import *

from seutil import LoggingUtils


class Environment:
    logger = LoggingUtils.get_logger(__name__, LoggingUtils.INFO)

    # ----------
    # Environment variables
    # ----------
    is_debug: bool = False
    random_seed: int = 14
    is_parallel: bool = False

    @classmethod
    def workers(cls) -> int:
        """Process count for grid scans; 1 means scans run in the calling process."""
        from ellipx.Macros import Macros
        return Macros.multi_processing if cls.is_parallel else 1
