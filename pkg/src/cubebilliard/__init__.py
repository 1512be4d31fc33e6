"""Billiard words in the d-dimensional cube: exact tracing, language
complexity, generalized diagonals and the counting lemmas around them."""
from .errors import (DegenerateDiagonal, DuplicateLine, EmptyProjection, InsufficientDepth,
                     NonPositiveValue, NotComparable, TieAtEdge, UnstableEnumeration,
                     ZeroComponent)
from .geometry import (BilliardWord, CrossingEvent, as_direction, as_point, billiard_orbit,
                       crossings, fold, project_trajectory, project_word, reflect,
                       segment_code, trace_string, trace_word)
from .language import (EnumerationConfig, LanguageSet, LanguageTable, SpecialStats,
                       cassaigne_check, classify_special, complexity_table,
                       directional_complexity, enumerate_language, exponent_fit)
from .diagonals import (Diagonal, Face, bispecial_diagonal_budget, combinatorial_length,
                        count_diagonals, diagonal_equation, enumerate_diagonals,
                        projection_surjectivity_check, words_in_diagonal)
from .numtheory import (build_sieve, coprime_power_sum, mobius_identity_check,
                        partial_sum_ratio, square_complexity)
from .arrangements import (Line2D, count_regions_2d, euler_check_hypercube,
                           region_growth_check)

__version__ = "0.1.0"
