"""Exact Gromov-Hausdorff distances and certified paths on GH spheres."""

__version__ = "0.1.0"

from .errors import (BudgetExceeded, GHError, MetricError, MonotonicityWarning,
                     PreconditionError, VerificationError)
from .metric import (FiniteMetricSpace, SpaceCharacteristics, characteristics,
                     combine_metrics, delta1, diameter, gh_to_point,
                     hausdorff_distance, is_isometric, scale, simplex, two_point,
                     validate_metric)
from .correspondences import (BlockPartition, Correspondence, GHResult, Relation,
                              check_separation, count_correspondences, distortion,
                              distortion_decomposed, enumerate_correspondences,
                              gh_exact, gh_value, is_correspondence, partition_from,
                              unique_optimal)
from .certificates import MembershipCertificate, NotMember, SphereSpec
from .curves import (PerturbationTable, SampledCurve, curve_length_estimate,
                     geodesic_curve, geodesic_point, nu_deformation,
                     perturb_space, perturbation_segment, rho_deformation,
                     sign_space, verify_curve)
from .sphere_paths import (connect_on_small_sphere, on_sphere, path_delta1,
                           path_large_sphere, path_small_sphere)
from .generators import (GeneratorRecipe, extend_one_point, gen_distinct_random,
                         gen_geometric_progression, gen_sphere_point,
                         gen_wellorder_graph)
