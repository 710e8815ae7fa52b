"""Exception hierarchy shared across the framework.

Every error the framework raises on purpose derives from RLFrameError so
callers can catch framework failures without swallowing programming errors.
"""


class RLFrameError(Exception):
    """Base class for all framework-raised errors."""


# --- environments ---------------------------------------------------------

class UnknownEnvironment(RLFrameError):
    """Requested registry name is not registered."""


class InvalidAction(RLFrameError):
    """An action is outside the agent's discrete action range."""


class StepAfterTerminal(RLFrameError):
    """step() was called on a terminal episode without reset()."""


class UnsupportedEnvironment(RLFrameError):
    """The environment does not support the requested capability."""


# --- network ---------------------------------------------------------------

class ParseError(RLFrameError):
    """Config document is not well-formed."""


class ValidationError(RLFrameError):
    """Config document is well-formed but violates a schema rule.

    Carries the path of the offending field, e.g. ``layers[1].in``.
    """

    def __init__(self, field: str, message: str):
        super().__init__(f"{field}: {message}")
        self.field = field


class ShapeError(RLFrameError):
    """Array input does not match the network's expected shape."""


class MissingKey(RLFrameError):
    """A required data-dictionary key is absent."""


class IoError(RLFrameError):
    """Checkpoint file could not be read or written."""


class ShapeMismatch(RLFrameError):
    """Checkpoint belongs to a different network configuration."""


class FormatError(RLFrameError):
    """Checkpoint file is corrupt (bad magic, version, or truncation)."""


# --- learners ---------------------------------------------------------------

class NotEnoughSamples(RLFrameError):
    """Replay buffer holds fewer transitions than the requested sample."""


class EpisodeNotTerminal(RLFrameError):
    """A complete-episode update was given an unfinished episode."""


class WeightDimMismatch(RLFrameError):
    """Objective-weight vector length differs from the reward length."""


class UnknownAlgorithm(RLFrameError):
    """Algorithm name is not in the learner registry."""


class SpecValidationError(RLFrameError):
    """A learner or monitor spec field is out of range."""


class IncompatibleNetwork(RLFrameError):
    """Network head dimensions do not fit the environment."""


class TrainingAborted(RLFrameError):
    """A learner thread died; carries the partial report gathered so far."""

    def __init__(self, message: str, report=None):
        super().__init__(message)
        self.report = report


# --- plugins ----------------------------------------------------------------

class HandshakeFailed(RLFrameError):
    """Plugin handshake was rejected or malformed."""


class ProtocolError(RLFrameError):
    """A wire frame could not be decoded or violated the protocol."""


class RemoteError(RLFrameError):
    """The plugin reported an error frame; carries its code and message."""

    def __init__(self, code: str, message: str):
        super().__init__(f"{code}: {message}")
        self.code = code
        self.remote_message = message


class Timeout(RLFrameError):
    """The plugin did not answer within the configured bound (or died)."""


class UnknownRemoteAlgorithm(RLFrameError):
    """Plugin does not serve the requested algorithm name."""


# --- human play ---------------------------------------------------------------

class SlotTaken(RLFrameError):
    """A human slot is already attached to that agent index."""


class PortInUse(RLFrameError):
    """The requested serve port could not be bound."""
