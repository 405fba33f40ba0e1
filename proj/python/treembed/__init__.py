"""Tree embeddings and distance oracles for graph metrics."""

from ._treembed import *  # noqa: F401,F403
from ._treembed import __doc__  # noqa: F401
