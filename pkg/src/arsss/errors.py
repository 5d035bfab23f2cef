"""Exception hierarchy.

Every domain error carries a machine-readable ``code`` that the CLI prints
verbatim on stderr.
"""


class ArsssError(Exception):
    code = "ARSSS_ERROR"


class BadParams(ArsssError, ValueError):
    code = "BAD_PARAMS"


class NegativeValue(ArsssError, ValueError):
    code = "NEGATIVE_VALUE"


class WidthMismatch(ArsssError, ValueError):
    code = "WIDTH_MISMATCH"


class NotDivisible(ArsssError, ValueError):
    code = "NOT_DIVISIBLE"


class NotRestricted(ArsssError, ValueError):
    code = "NOT_RESTRICTED"


class DimensionMismatch(ArsssError, ValueError):
    code = "DIMENSION_MISMATCH"


class Singular(ArsssError, ValueError):
    code = "SINGULAR"


class NonIntegralSolution(ArsssError, ValueError):
    code = "NON_INTEGRAL_SOLUTION"


class RankConditionViolated(ArsssError, ValueError):
    code = "RANK_CONDITION_VIOLATED"


class NotEnoughShares(ArsssError, ValueError):
    code = "NOT_ENOUGH_SHARES"


class GeneratorMismatch(ArsssError, ValueError):
    code = "GENERATOR_MISMATCH"


class NegativesUnavailable(ArsssError, ValueError):
    code = "NEGATIVES_UNAVAILABLE"


class FieldTooLarge(ArsssError, ValueError):
    code = "FIELD_TOO_LARGE"


class NotFullRank(ArsssError, ValueError):
    code = "NOT_FULL_RANK"


class TooLarge(ArsssError, ValueError):
    code = "TOO_LARGE"
