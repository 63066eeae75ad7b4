"""Local n-pseudofields and the locally sharply n-transitive groups built from them."""

from .core import Mode, PseudofieldInstance, Reason, Undefined, undefined
from .extraction import ActionOracle, extract_pseudofield, group_oracle, roundtrip_check
from .group import embed_stabilizer, gact, gidentity, ginv, gmul
from .instances import InstanceDescriptor, adversarial, make_instance
from .report import CheckReport, SampleConfig
from .verify import check_all, check_roundtrip
from .words import Inv, Phi, RightMul, Sigma, act, eval_word, tuple_word

__version__ = "0.1.0"

__all__ = [
    "ActionOracle",
    "CheckReport",
    "InstanceDescriptor",
    "Inv",
    "Mode",
    "Phi",
    "PseudofieldInstance",
    "Reason",
    "RightMul",
    "SampleConfig",
    "Sigma",
    "Undefined",
    "act",
    "adversarial",
    "check_all",
    "check_roundtrip",
    "embed_stabilizer",
    "eval_word",
    "extract_pseudofield",
    "gact",
    "gidentity",
    "ginv",
    "gmul",
    "group_oracle",
    "make_instance",
    "roundtrip_check",
    "tuple_word",
    "undefined",
]
