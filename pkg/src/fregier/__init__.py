"""Frégier points and Frégier loci of conics in Cayley-Klein planes."""
from .conic import (
    Conic,
    ConicRank,
    conics_equal,
    intersect_line,
    pole,
    polar,
    rank_classify,
    sample_points,
    split_line_pair,
)
from .construction import fregier_point, fregier_point_chords, fregier_point_isotropic, involution_image, right_chord
from .errors import (
    ClassificationAmbiguous,
    DomainViolation,
    FitUnstable,
    FregierError,
    NumericalInstability,
)
from .families import FAMILIES, FamilySpec, closed_form_locus
from .locus import LocusResult, locus_fit, real_range
from .metric import ELLIPTIC, EUCLIDEAN, HYPERBOLIC, PSEUDO_EUCLIDEAN, Geometry, geometry, isotropic_lines, normal_line
from .pencil import PencilClass, base_points, classify, singular_members
from .projective import DEFAULT_TOL, ProjLine, ProjPoint, Tolerance, join, meet
from .render import Viewport, build_scene, render_svg
from .scan import Sweep, singular_scan

__version__ = "0.1.0"
