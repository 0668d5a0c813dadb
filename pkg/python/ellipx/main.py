from typing import *

from importlib import metadata
from pathlib import Path
import random
import sys

import numpy as np
from seutil import CliUtils, LoggingUtils

from ellipx.Environment import Environment
from ellipx.Macros import Macros
from ellipx.Utils import Utils
from ellipx.exceptions import BracketError, ConvergenceError, EllipticDomainError, EllipxError, PoleError, UsageError

# Check seutil version

EXPECTED_SEUTIL_VERSION = "0.5.1"
if metadata.version("seutil") < EXPECTED_SEUTIL_VERSION:
    print(
        f"seutil version does not meet expectation! Expected version: {EXPECTED_SEUTIL_VERSION}, current installed version: {metadata.version('seutil')}",
        file=sys.stderr)
    print(
        f"Hint: either upgrade seutil, or modify the expected version (after confirmation that the version will work)",
        file=sys.stderr)
    sys.exit(-1)
# end if


logging_file = Macros.python_dir / "ellipx.log"
LoggingUtils.setup(filename=str(logging_file))

logger = LoggingUtils.get_logger(__name__)


class ChecksFailed(EllipxError):
    """At least one verification check did not pass."""


def _require(options: dict, *keys: str):
    for key in keys:
        if Utils.get_option(options, key) is None:
            raise UsageError(f"missing required option --{key}")
        # end if
    # end for


def _open_unit_u(options: dict) -> float:
    u = Utils.get_option_as_float(options, "u")
    if not 0 < u < 1:
        raise UsageError(f"--u must lie in (0, 1), got {u}")
    # end if
    return u


def _int_option(options: dict, opt: str, default: int) -> int:
    value = Utils.get_option(options, opt, default)
    try:
        return int(value)
    except (TypeError, ValueError):
        raise UsageError(f"Option --{opt} expects an integer, got {value!r}")
    # end try


def emit_json(obj, out: Optional[str] = None):
    if out is not None:
        Utils.dump_json(Path(out), obj)
        logger.info(f"Wrote {out}")
    else:
        print(Utils.dumps_json(obj))
    # end if
    return


# ==========
# Evaluation

def eval_point(**options):
    from ellipx.core.elliptic_core import build_context
    from ellipx.core.jacobi_fn import continued_triple, jacobi_triple, sigma
    from ellipx.data.Parameter import Parameter
    _require(options, "u", "m-re")
    u = Utils.get_option_as_float(options, "u")
    if not 0 <= u <= 2:
        raise UsageError(f"--u must lie in [0, 2], got {u}")
    # end if
    m = complex(Utils.get_option_as_float(options, "m-re"), Utils.get_option_as_float(options, "m-im", 0.0))
    side = Utils.get_option(options, "side")
    p = Parameter.create(m, side)
    ctx = build_context(p)
    if p.regime == Parameter.ONE:
        # sn -> tanh(K u) with K = infinity, folded about u = 1
        if u == 0:
            s, c, d = 0.0, 1.0, 1.0
        elif u == 2:
            s, c, d = 0.0, -1.0, 1.0
        else:
            s, c, d = 1.0, 0.0, 0.0
        # end if
    else:
        t = continued_triple(u, ctx) if p.regime == Parameter.CUT else jacobi_triple(u, ctx)
        s, c, d = t.s, t.c, t.d
    # end if
    result = {"K": ctx.K, "Kprime": ctx.Kprime, "q": ctx.q, "sn": s, "cn": c, "dn": d}
    result["sigma"] = sigma(u, p).sigma
    emit_json(result, Utils.get_option(options, "out"))


# ==========
# Figure data

def region(**options):
    from ellipx.FigureData import FigureData
    _require(options, "u", "window", "step")
    u = _open_unit_u(options)
    window = Utils.get_option_as_floats(options, "window")
    step = Utils.get_option_as_float(options, "step")
    paths = FigureData().region(u, window, step, Utils.get_option(options, "out"), Environment.workers())
    logger.info(f"Region data written to {paths[0]} and {paths[1]}")


def maxima(**options):
    from ellipx.FigureData import FigureData
    u_min = Utils.get_option_as_float(options, "u-min", 0.51)
    u_max = Utils.get_option_as_float(options, "u-max", 0.99)
    u_step = Utils.get_option_as_float(options, "u-step", 0.01)
    if not (0 < u_min <= u_max < 1 and u_step > 0):
        raise UsageError(f"maxima needs 0 < u-min <= u-max < 1 and u-step > 0, got {u_min}, {u_max}, {u_step}")
    # end if
    FigureData().maxima(u_min, u_max, u_step, Utils.get_option(options, "out"), Environment.workers())


def global_max_action(**options):
    from ellipx.extremal.extremal import global_max
    refine = Utils.get_option_as_float(options, "refine", Macros.global_refine)
    if not refine > 0:
        raise UsageError(f"--refine must be positive, got {refine}")
    # end if
    gm = global_max(Macros.global_u_grid, refine)
    emit_json(gm._asdict(), Utils.get_option(options, "out"))


def profile(**options):
    from ellipx.FigureData import FigureData
    _require(options, "u")
    u = _open_unit_u(options)
    m_min = Utils.get_option_as_float(options, "m-min", 1.0)
    m_max = Utils.get_option_as_float(options, "m-max", 2.0)
    step = Utils.get_option_as_float(options, "step", 0.01)
    if not (step > 0 and m_max > m_min):
        raise UsageError(f"profile needs m-max > m-min and step > 0, got {m_min}, {m_max}, {step}")
    # end if
    FigureData().profile(u, m_min, m_max, step, Utils.get_option(options, "out"))


# ==========
# Verification and spectral checks

def verify(**options):
    from ellipx.verify.Verifier import Verifier
    suites = Utils.get_option_as_list(options, "suite", ["all"])
    for s in suites:
        if s != "all" and s not in Macros.suites:
            raise UsageError(f"unknown suite {s!r}; expected one of {Macros.suites} or all")
        # end if
    # end for
    overrides = {}
    if Utils.get_option(options, "samples") is not None:
        n = _int_option(options, "samples", 0)
        overrides.update({"agm_samples": n, "identity_samples": n, "theorem1_samples": n})
    # end if
    verifier = Verifier(overrides, Environment.workers())
    reports = verifier.run(suites)
    out = Utils.get_option(options, "out")
    if out is not None:
        Verifier.dump(reports, Path(out))
    else:
        print(Utils.dumps_json([r.to_json() for r in reports]))
    # end if
    failed = [r.check_name for r in reports if not r.passed]
    if len(failed) > 0:
        raise ChecksFailed(f"{len(failed)} of {len(reports)} checks failed: {failed}")
    # end if
    logger.info(f"All {len(reports)} checks passed")


def spectral(**options):
    from ellipx.spectral import spectral_app
    k = complex(Utils.get_option_as_float(options, "k-re", 0.5), Utils.get_option_as_float(options, "k-im", 0.0))
    z = complex(Utils.get_option_as_float(options, "z-re", 0.7), Utils.get_option_as_float(options, "z-im", 0.2))
    n_max = _int_option(options, "n-max", 24)
    order = _int_option(options, "order", Macros.gauss_order)
    if n_max < 3 or order < 1:
        raise UsageError(f"spectral needs n-max >= 3 and order >= 1, got {n_max}, {order}")
    # end if
    v = spectral_app.v_sequence(z, k, n_max, order)
    rows, rhs = spectral_app.jacobi_residual(k, z, n_max, order)
    result = {
        "v": v.entries,
        "residuals": rows,
        "rhs_check": {"first_row": rows[0], "expected": rhs, "error": abs(rows[0] - rhs),
                      "max_interior": float(np.max(np.abs(rows[1:])))},
    }
    if Utils.get_option_as_boolean(options, "eigen"):
        result["eigenvalues"] = spectral_app.truncated_eigenvalues(k, n_max)
    # end if
    emit_json(result, Utils.get_option(options, "out"))


ACTIONS = {
    "eval": eval_point,
    "region": region,
    "maxima": maxima,
    "global-max": global_max_action,
    "global_max": global_max_action,
    "profile": profile,
    "verify": verify,
    "spectral": spectral,
}


def normalize_options(opts: dict) -> dict:
    # Set a different log file
    if "log_path" in opts:
        logger.info(f"Switching to log file {opts['log_path']}")
        LoggingUtils.setup(filename=opts['log_path'])
    # end if

    # Set debug mode
    if "debug" in opts and str(opts["debug"]).lower() != "false":
        Environment.is_debug = True
        logger.debug("Debug mode on")
        logger.debug(f"Command line options: {opts}")
    # end if

    # Set parallel mode
    if "parallel" in opts and str(opts["parallel"]).lower() != "false":
        Environment.is_parallel = True
        logger.warning(f"Parallel mode on, {Macros.multi_processing} workers")
    # end if

    # Set/report random seed
    if "random_seed" in opts:
        Environment.random_seed = int(opts["random_seed"])
    # end if
    random.seed(Environment.random_seed)
    np.random.seed(Environment.random_seed)
    logger.info(f"Random seed is {Environment.random_seed}")
    return opts


def join_option_values(argv: Sequence[str]) -> List[str]:
    """Turns `--key value` into `--key=value`; a `--flag` followed by another option stays a flag."""
    joined: List[str] = []
    i = 0
    while i < len(argv):
        arg = argv[i]
        if arg.startswith("--") and "=" not in arg and i + 1 < len(argv) and not argv[i + 1].startswith("--"):
            joined.append(f"{arg}={argv[i + 1]}")
            i += 2
        else:
            joined.append(arg)
            i += 1
        # end if
    # end while
    return joined


def run_cli(argv: Sequence[str]) -> int:
    argv = join_option_values(argv)
    if len(argv) == 0 or argv[0] not in ACTIONS:
        print(f"usage: python -m ellipx.main {{{'|'.join(ACTIONS)}}} [--key=value ...]", file=sys.stderr)
        return 2
    # end if
    try:
        CliUtils.main(argv, ACTIONS, normalize_options)
    except ChecksFailed as e:
        logger.error(str(e))
        return 1
    except (ConvergenceError, BracketError) as e:
        logger.error(f"numerical failure: {e}")
        return 1
    except (UsageError, EllipticDomainError, PoleError) as e:
        logger.error(f"invalid arguments: {e}")
        print(f"error: {e}", file=sys.stderr)
        return 2
    # end try
    return 0


if __name__ == "__main__":
    sys.exit(run_cli(sys.argv[1:]))
