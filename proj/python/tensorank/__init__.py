"""Tensor rank analysis: Schmidt spectra, TT/Tucker/HT/MERA decompositions,
min-cut bond bounds, separability scaling, and capacity formulas."""

try:
    from ._tensorank import *  # noqa: F401,F403
    from ._tensorank import __doc__ as _core_doc  # noqa: F401
except ImportError:  # in-tree builds put the extension on sys.path directly
    from _tensorank import *  # noqa: F401,F403
