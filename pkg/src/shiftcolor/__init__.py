"""Embedding relations on composite quasi-orders and explicit proper
3-colorings of their shift graphs, evaluated on ultimately periodic points."""

from .colorer import ColorTrace, color
from .qo import (QoSpec, antichain, chain, enumerate_elements, finset, leq,
                 parse_element, parse_spec, product, seq, tree1, treem, union)
from .upseq import UPSeq, canonicalize, is_bad, make_up

__version__ = "0.1.0"
