"""Published reference values used by the verification suite.

Polynomials are in x = eps0 - 1, y = eps1 - 1 and parse with
:func:`fermat_galois.render.parse_xy`.
"""

B_MINUS_ONE = {
    (3, 0): "xy + 2xy(x+y)",
    (3, 1): "2xy(x+y) + x^2y^2",
    (5, 0): "4x^4y^4 + x^4y^3 + 3x^4y^2 + 4x^4y + x^3y^4 + x^3y^3 + 2x^3y^2 + 4x^3y"
            " + 3x^2y^4 + 2x^2y^3 + 3x^2y + 4xy^4 + 4xy^3 + 3xy^2",
    (5, 1): "2x^4y^4 + 2x^4y^3 + 4x^4y^2 + 4x^4y + 2x^3y^4 + 2x^3y^3 + 4x^3y^2 + x^3y"
            " + 4x^2y^4 + 4x^2y^3 + x^2y^2 + 4x^2y + 4xy^4 + xy^3 + 4xy^2",
    (5, 2): "2x^4y^4 + 3x^4y^3 + 3x^4y^2 + 3x^3y^4 + 4x^3y^3 + 4x^3y^2 + 4x^3y"
            " + 3x^2y^4 + 4x^2y^3 + 4x^2y^2 + x^2y + 4xy^3 + xy^2",
    (7, 0): "x^6y^5 + 3x^6y^4 + 2x^6y^3 + 2x^6y^2 + 6x^6y"
            " + x^5y^6 + 2x^5y^5 + x^5y^4 + 4x^5y^3 + 6x^5y"
            " + 3x^4y^6 + x^4y^5 + 5x^4y^4 + 2x^4y^2"
            " + 2x^3y^6 + 4x^3y^5 + 4x^3y^2 + 4x^3y"
            " + 2x^2y^6 + 2x^2y^4 + 4x^2y^3 + 4x^2y^2 + 3x^2y"
            " + 6xy^6 + 6xy^5 + 4xy^3 + 3xy^2",
    (7, 1): "5x^6y^6 + 3x^6y^5 + 2x^6y^4 + 3x^6y^3 + 6x^6y^2 + 6x^6y"
            " + 3x^5y^6 + 3x^5y^5 + 4x^5y^4 + 4x^5y^3 + 5x^5y^2 + x^5y"
            " + 2x^4y^6 + 4x^4y^5 + x^4y^4 + 4x^4y^3 + 5x^4y^2 + 6x^4y"
            " + 3x^3y^6 + 4x^3y^5 + 4x^3y^4 + 2x^3y^3 + 6x^3y^2 + x^3y"
            " + 6x^2y^6 + 5x^2y^5 + 5x^2y^4 + 6x^2y^3 + x^2y^2 + 6x^2y"
            " + 6xy^6 + xy^5 + 6xy^4 + xy^3 + 6xy^2",
    (7, 2): "2x^6y^6 + 6x^6y^5 + 5x^6y^4 + x^6y^3"
            " + 6x^5y^6 + x^5y^5 + 5x^5y^4 + 2x^5y^3 + 3x^5y^2 + 6x^5y"
            " + 5x^4y^6 + 5x^4y^5 + 4x^4y^4 + 5x^4y^2 + 2x^4y"
            " + x^3y^6 + 2x^3y^5 + 3x^3y^3 + x^3y^2 + 4x^3y"
            " + 3x^2y^5 + 5x^2y^4 + x^2y^3 + 4x^2y^2 + 3x^2y"
            " + 6xy^5 + 2xy^4 + 4xy^3 + 3xy^2",
    (7, 3): "4x^6y^5 + 2x^6y^3 + 4x^6y^2"
            " + 4x^5y^6 + 4x^5y^5 + x^5y^4 + 6x^5y^3 + 3x^5y^2"
            " + x^4y^5 + 4x^4y^4 + 5x^4y^3 + 4x^4y^2 + 6x^4y"
            " + 2x^3y^6 + 6x^3y^5 + 5x^3y^4 + 2x^3y^3 + 2x^3y"
            " + 4x^2y^6 + 3x^2y^5 + 4x^2y^4 + 2x^2y^2 + 5x^2y"
            " + 6xy^4 + 2xy^3 + 5xy^2",
}

# p -> (dim M^Q, dim M^Q cap H_1(U))
INVARIANT_DIMS = {3: (5, 3), 5: (11, 9), 7: (17, 15)}

# p -> common dimension of ker(B_{tau_i} - 1), i >= 1
KERNEL_DIMS = {5: 13, 7: 19}

# p -> dim H^1(Q, M)
H1_DIMS = {3: 9, 5: 33, 7: 68}

# (p, ell, largest m) for the mod-p vanishing of point counts
COUNT_CASES = ((3, 7, 3), (5, 11, 2), (7, 29, 1))

# (p, ell) for the exact Jacobi-sum count identity
IDENTITY_CASES = ((3, 7), (3, 13), (5, 11))
