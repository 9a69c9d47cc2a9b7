"""PRB dimensioning for cells whose users live on roads modeled by a
Poisson line process."""

from ._plpdim import *  # noqa: F401,F403
