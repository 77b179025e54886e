"""
coxnorm/coxeter
Finite reflection groups: root systems, exact element arithmetic,
chambers and parabolic cosets.
"""

from coxeter.errors import (CoxeterError, MixedGroups, NumericalAmbiguity,
                            OrderCapExceeded, SpecParseError)
from coxeter.group import (Chamber, CoxeterGroup, GroupElement, ParabolicCoset,
                           build_group, chamber_of, element_from_word, length,
                           multiply, parabolic_cosets)
from coxeter.roots import RootSystem, build_root_system
from coxeter.spec import CoxeterComponent, CoxeterSpec, parse_spec

__all__ = [
    'Chamber', 'CoxeterComponent', 'CoxeterError', 'CoxeterGroup', 'CoxeterSpec',
    'GroupElement', 'MixedGroups', 'NumericalAmbiguity', 'OrderCapExceeded',
    'ParabolicCoset', 'RootSystem', 'SpecParseError', 'build_group',
    'build_root_system', 'chamber_of', 'element_from_word', 'length', 'multiply',
    'parabolic_cosets', 'parse_spec',
]
