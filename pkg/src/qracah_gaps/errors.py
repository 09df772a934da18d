"""Module for the exceptions raised by qracah_gaps."""
from __future__ import annotations


class QRacahError(Exception):
    """Base class for every error raised by the q-Racah gap library."""


class ConfigurationError(QRacahError, ValueError):
    """The configuration file or the command line flags are invalid."""


class DivisionByZeroError(QRacahError, ZeroDivisionError):
    """Division by an exact or floating zero."""


class BackendMismatchError(QRacahError):
    """Two scalars from different numeric backends or different quadratic fields were combined."""


class ZeroDenominatorError(QRacahError):
    """A rational function was built with the zero polynomial as denominator."""


class HigherOrderPoleError(QRacahError):
    """A Laurent expansion was requested at a pole of order larger than one."""


class InvalidParamsError(QRacahError, ValueError):
    """Ensemble parameters violate a structural requirement (q outside (0,1), M < N-1, ...)."""


class ZeroArgumentError(QRacahError):
    """sigma(z) was evaluated at z = 0."""


class NoCaseAppliesError(QRacahError):
    """None of the tiling-to-ensemble cases covers the requested slice."""


class TooLargeError(QRacahError):
    """An enumeration exceeds its configuration guard."""


class DegenerateWeightError(QRacahError):
    """A Hankel minor of the moment matrix vanishes."""


class IndexOutOfRangeError(QRacahError, IndexError):
    """A node index lies outside 0..M."""


class NonConvergentError(QRacahError):
    """An infinite q-Pochhammer product does not converge."""


class SingularOperatorError(QRacahError):
    """1 - K restricted to the gap block is singular."""


class DegenerateJumpError(QRacahError):
    """The nilpotent jump matrix is degenerate (t11 = 0, t12 = 0 or zero kernel vector)."""


class InvariantViolationError(QRacahError):
    """A structural identity that must hold exactly does not."""


class CancellationFailureError(QRacahError):
    """A polynomial division that must be exact leaves a remainder."""


class RankFailureError(QRacahError):
    """A residue matrix that must have rank one does not."""


class NoSolutionError(QRacahError):
    """A linear system that must be consistent is not."""


class EvaluationAtPoleError(QRacahError):
    """A matrix function was evaluated at one of its poles."""


class ZeroDeterminantError(QRacahError):
    """det[v, v2] vanishes in the double-ratio recursion."""


class DegenerateB21Error(QRacahError):
    """The palindromic quadratic factor of b21 degenerates (k0 = 0)."""


class InvolutionFixedPointError(QRacahError):
    """Invariant coordinates were requested at a fixed point of the involution."""


class BasePointHitError(QRacahError):
    """A change of coordinates was evaluated at a base point where it is undefined."""


class IndeterminateStepError(QRacahError):
    """The discrete Painleve step is indeterminate at the given point."""


class NonDiagonalLimitError(QRacahError):
    """The asymptotic limit of a conjugated connection matrix is not diagonal."""


class UnknownTokenError(QRacahError):
    """A Weyl word contains a token that is not a generator of the group."""


class InvalidKappaError(QRacahError, ValueError):
    """kappa^2 lies outside the admissible range [0, q^(T-1))."""
