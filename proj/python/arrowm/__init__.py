"""Python bindings for the Lyapunov operator M."""

try:
    from ._arrowm import *  # noqa: F401,F403
    from ._arrowm import __doc__  # noqa: F401
except ImportError:  # in-tree build: the extension sits next to the package
    from _arrowm import *  # noqa: F401,F403
