"""Exception types raised across the package."""


class SOCodesError(Exception):
    pass


class RankDeficient(SOCodesError):
    """Generator rows are linearly dependent."""


class DimensionTooSmall(SOCodesError):
    """Simplex padding needs k >= 3 to preserve self-orthogonality."""


class SpanFailure(SOCodesError):
    """A multiplicity vector's support does not span F_2^k."""


class OddDistance(SOCodesError):
    pass


class FormatError(SOCodesError):
    """Malformed matrix or witness file."""


class VerificationFailed(SOCodesError):
    """A witness does not have the parameters its header claims."""

    def __init__(self, prop: str, detail: str = "") -> None:
        self.prop = prop
        super().__init__(f"{prop}: {detail}" if detail else prop)


class MissingSeed(SOCodesError):
    def __init__(self, n: int, k: int, d: int) -> None:
        self.n, self.k, self.d = n, k, d
        super().__init__(f"no seed fixture for [{n},{k},{d}] SO code")
