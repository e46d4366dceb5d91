"""Single-edge modification analysis for networked control systems."""

import os
import sys

_ext_dir = os.environ.get("NETMOD_EXT_DIR")
if _ext_dir:
    # in-tree test runs load the extension straight from the build directory
    sys.path.insert(0, _ext_dir)
    from _netmod import *  # noqa: F401,F403
    import _netmod as _impl
else:
    from ._netmod import *  # noqa: F401,F403
    from . import _netmod as _impl

__all__ = [name for name in dir(_impl) if not name.startswith("_")]
