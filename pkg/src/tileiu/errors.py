"""Structured error types.

Every error carries a short machine-readable ``code`` that the command line
maps to a distinct exit status.
"""


class TileIUError(Exception):
    code = "error"
    exit_status = 1

    def __init__(self, message: str = "", **details):
        super().__init__(message or self.code)
        self.details = details


class SeedUnstable(TileIUError):
    code = "seed-unstable"


class SeedDisconnected(TileIUError):
    code = "seed-disconnected"


class DuplicateLabelStrength(TileIUError):
    code = "duplicate-label-strength"


class UnknownTileInSeed(TileIUError):
    code = "unknown-tile-in-seed"


class BadDimension(TileIUError):
    code = "bad-dimension"


class IllegalAttachment(TileIUError):
    code = "illegal-attachment"


class BudgetExceeded(TileIUError):
    code = "budget-exceeded"
    exit_status = 3

    def __init__(self, message: str = "", partial_count: int = 0, **details):
        super().__init__(message or f"exploration budget exceeded after {partial_count} assemblies",
                         partial_count=partial_count, **details)
        self.partial_count = partial_count


class ProgramTooWide(TileIUError):
    code = "program-too-wide"


class InvalidOperand(TileIUError):
    code = "invalid-operand"


class PathCollision(TileIUError):
    code = "path-collision"


class DidNotTerminate(TileIUError):
    code = "did-not-terminate"


class BoundaryNotCallbackCapable(TileIUError):
    code = "boundary-not-callback-capable"


class LayoutMismatch(TileIUError):
    code = "layout-mismatch"


class UnsupportedDimension(TileIUError):
    code = "unsupported-dimension"


class CodecMismatch(TileIUError):
    code = "codec-mismatch"


class FormatError(TileIUError):
    code = "format-error"


class VerificationFailed(TileIUError):
    code = "verification-failed"
    exit_status = 2
