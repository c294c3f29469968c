"""Exception types. Each carries a short machine-readable ``code``."""


class AbsPPTError(ValueError):
    code = "ERROR"

    def __init__(self, message, code=None):
        super().__init__(message)
        if code is not None:
            self.code = code


class SpectrumError(AbsPPTError):
    """Raised for WRONG_LENGTH / NEGATIVE_EIGENVALUE / bad dimensions."""


class MatrixError(AbsPPTError):
    """Raised for DIM_MISMATCH / NOT_HERMITIAN."""


class OrderingError(AbsPPTError):
    """Raised for NOT_A_BIJECTION / P_TOO_LARGE / P_MISMATCH."""


class NotAViolation(AbsPPTError):
    code = "NOT_A_VIOLATION"
