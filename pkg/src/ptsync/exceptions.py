class PTSyncError(Exception):
    """Base class for errors raised by ptsync."""


class SingularFitError(PTSyncError):
    """The branch basis could not be fitted to the initial state."""


class StepUnderflowError(PTSyncError):
    """Adaptive integration could not meet its tolerance."""

    def __init__(self, t: float, step: float):
        super().__init__(f"step size underflow at t={t!r} (step={step:.3e})")
        self.t = t
        self.step = step
