"""Library tour: one identity, one b-function, one Berezin integral."""

from cayleyid import (GContext, IdentityCase, Matrix, Ring, expected_bfunction,
                      factored_bfunction, grassmann_path_check, verify_identity)
from cayleyid.grassmann import gaussian_complex
from cayleyid.ring import param


def main():
    # det(d) applied to (det X)^s for a 3x3 matrix, with the (1,2) minor removed
    case = IdentityCase("ordinary", (3,), (1,), (2,))
    report = verify_identity(case)
    print("holds:", report.holds)
    print("b(s): ", report.computed_b)
    print("lhs:  ", report.lhs)

    # b-functions, factored and expanded
    for family, dims in [("symmetric", (3,)), ("rect_antisym", (1, 2)), ("antisym_det", (2,))]:
        print(f"{family:<13} {factored_bfunction(family, dims):<24} {expected_bfunction(family, dims)}")

    # the same operator side at s = 2, recomputed through a Grassmann integral
    print("Grassmann path agrees:", grassmann_path_check(case, 2))

    # a complex Gaussian integral returns the determinant of its form
    ring = Ring()
    A = Matrix.build(2, 2, lambda i, j: ring.var(param("a", i, j)))
    print("complex Gaussian:", gaussian_complex(A, ring, GContext.complex(ring, 2)))


if __name__ == "__main__":
    main()
