import enum


class Half(str, enum.Enum):
    E = "E"
    F = "F"


class ZeroTest(str, enum.Enum):
    PROVEN_ZERO = "proven_zero"
    UNKNOWN = "unknown"


class Verdict(str, enum.Enum):
    VERIFIED = "verified"
    UNKNOWN = "unknown"
    FAILED = "failed"


class SeriesSign(str, enum.Enum):
    PLUS = "+"
    MINUS = "-"


class CountFamily(str, enum.Enum):
    COMM = "comm"
    COMM4_Z1 = "comm4_z1"
    COMM4_Z2_OPEN = "comm4_z2open"
    QUOT = "quot"
    QUOT_FLAG = "quot_flag"
    LOCUS_L = "locus_L"
    LOCUS_M = "locus_M"


class FiberStatus(str, enum.Enum):
    CONFIRMED = "confirmed"
    VIOLATED = "violated"
    INCONCLUSIVE = "inconclusive"


class OutputMode(str, enum.Enum):
    HUMAN = "human"
    JSON = "json"
    CSV = "csv"
