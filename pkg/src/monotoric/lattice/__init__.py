from .linalg import determinant, inverse, rank, solve, to_fraction
from .polyhedron import (Polyhedron, bounding_box, convex_hull, feasible_point, is_bounded,
                         lattice_points, nonzero_ray, polyhedron_is_empty, recession_cone,
                         remove_redundant, vertices)
from .faces import (Face, FaceLattice, SimplicialComplex, barycentric_boundary,
                    barycentric_cone, face_lattice, order_complex)
from .cochain import CochainComplex, complex_cohomology, simplicial_cochains
