from typing import *

import copy
import json
import math
from pathlib import Path
import numpy as np
from seutil import IOUtils

from ellipx.Macros import Macros
from ellipx.exceptions import UsageError


class Utils:

    @classmethod
    def _lookup(cls, options: dict, opt: str):
        """CliUtils keeps option names verbatim; accept both dashed and underscored spellings."""
        for key in (opt, opt.replace("_", "-"), opt.replace("-", "_")):
            if key in options:
                return True, options[key]
            # end if
        # end for
        return False, None

    @classmethod
    def get_option(cls, options, opt, default=None):
        found, value = cls._lookup(options, opt)
        return value if found else default

    @classmethod
    def get_option_as_boolean(cls, options, opt, default=False) -> bool:
        found, value = cls._lookup(options, opt)
        if not found:
            return default
        else:
            # Due to limitations of CliUtils...
            return str(value).lower() != "false"
        # end if

    @classmethod
    def get_option_as_list(cls, options, opt, default=None) -> list:
        found, value = cls._lookup(options, opt)
        if not found:
            return copy.deepcopy(default)
        else:
            l = value
            if isinstance(l, tuple):  l = list(l)
            if isinstance(l, str):  l = [x for x in l.split(",") if x != ""]
            if not isinstance(l, list):  l = [l]
            return l
        # end if

    @classmethod
    def get_option_as_float(cls, options, opt, default=None) -> Optional[float]:
        found, value = cls._lookup(options, opt)
        if not found:
            return default
        # end if
        try:
            return float(value)
        except (TypeError, ValueError):
            raise UsageError(f"Option --{opt} expects a number, got {value!r}")
        # end try

    @classmethod
    def get_option_as_floats(cls, options, opt, default=None) -> Optional[List[float]]:
        values = cls.get_option_as_list(options, opt)
        if values is None:
            return copy.deepcopy(default)
        # end if
        try:
            return [float(v) for v in values]
        except (TypeError, ValueError):
            raise UsageError(f"Option --{opt} expects a comma separated list of numbers, got {values!r}")
        # end try

    # JSON encoding of numeric results
    @classmethod
    def jsonify(cls, obj):
        if isinstance(obj, dict):
            return {k: cls.jsonify(v) for k, v in obj.items()}
        elif isinstance(obj, (list, tuple)):
            return [cls.jsonify(v) for v in obj]
        elif isinstance(obj, np.ndarray):
            return [cls.jsonify(v) for v in obj.tolist()]
        elif isinstance(obj, (bool, np.bool_)):
            return bool(obj)
        elif isinstance(obj, (complex, np.complexfloating)):
            return {"re": cls.jsonify(float(obj.real)), "im": cls.jsonify(float(obj.imag))}
        elif isinstance(obj, (float, np.floating)):
            return float(obj) if math.isfinite(obj) else None
        elif isinstance(obj, np.integer):
            return int(obj)
        else:
            return obj
        # end if

    @classmethod
    def dumps_json(cls, obj, indent: int = 2) -> str:
        """JSON text of obj with floats in the fixed 17 significant digit format."""
        return cls._dumps(cls.jsonify(obj), indent, 0)

    @classmethod
    def _dumps(cls, obj, indent: int, level: int) -> str:
        pad, inner = " " * (indent * level), " " * (indent * (level + 1))
        if isinstance(obj, dict):
            if len(obj) == 0:  return "{}"
            items = [f"{inner}{json.dumps(str(k))}: {cls._dumps(v, indent, level + 1)}" for k, v in obj.items()]
            return "{\n" + ",\n".join(items) + "\n" + pad + "}"
        elif isinstance(obj, list):
            if len(obj) == 0:  return "[]"
            items = [inner + cls._dumps(v, indent, level + 1) for v in obj]
            return "[\n" + ",\n".join(items) + "\n" + pad + "]"
        elif isinstance(obj, float):
            return Macros.float_format % obj
        else:
            return json.dumps(obj)
        # end if

    @classmethod
    def dump_json(cls, path: Path, obj):
        IOUtils.mk_dir(path.parent)
        IOUtils.dump(path, cls.dumps_json(obj) + "\n", IOUtils.Format.txt)
        return
