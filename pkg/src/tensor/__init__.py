from .mat import Mat, embed, kron, mat_poly
