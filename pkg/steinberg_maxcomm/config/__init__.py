from .settings import VerificationConfig

__all__ = ["VerificationConfig"]
