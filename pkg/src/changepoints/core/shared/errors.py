class ChangepointError(ValueError):
    """Base class of every error raised by the detector."""

    exit_code: int = 1


class DomainError(ChangepointError):
    """An argument lies outside the mathematical domain of a function."""

    exit_code = 2


class ContractError(ChangepointError):
    """A caller broke a precondition: dimensions, directions, sizes."""

    exit_code = 2


class InputError(ChangepointError):
    """Observed data cannot be used as given."""

    exit_code = 2


class ConfigError(ChangepointError):
    """A run configuration failed validation."""

    exit_code = 3

    def __init__(self, key: str, message: str) -> None:
        super().__init__(f"{key}: {message}")
        self.key = key


class NumericalError(ChangepointError):
    exit_code = 4


class SingularityError(NumericalError):
    """The observed block of the noise covariance cannot be inverted safely."""

    def __init__(self, message: str, t: int | None = None) -> None:
        where = f"at t={t}: " if t is not None else ""
        super().__init__(f"{where}{message}")
        self.t = t
