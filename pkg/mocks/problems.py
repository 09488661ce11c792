"""Canonical problem files shared by the tests and scripts/generate_problems.py."""

SCHEMA = "gdual/1"

EMPTY = {"schema": SCHEMA}

SUPER_EXTERIOR = {
    "schema": SCHEMA,
    "group": {"free_rank": 0, "torsion": [2]},
    "bicharacter": {"kind": "super"},
    "objects": [{"name": "Lambda", "kind": "bialgebra", "builder": "super_exterior"}],
}

EXTERIOR_TRIVIAL = {
    "schema": SCHEMA,
    "group": {"free_rank": 0, "torsion": [2]},
    "bicharacter": {"kind": "trivial"},
    "objects": [{"name": "Lambda", "kind": "bialgebra", "builder": "super_exterior"}],
}

GROUP_ALGEBRA_Z2 = {
    "schema": SCHEMA,
    "objects": [{"name": "kZ2", "kind": "bialgebra", "builder": "group_algebra", "args": {"torsion": [2]}}],
}

GROUND_FIELD = {
    "schema": SCHEMA,
    "objects": [{"name": "k", "kind": "bialgebra", "builder": "ground_field"}],
}

DUAL_NUMBERS_TABLE = {
    "schema": SCHEMA,
    "objects": [
        {
            "name": "D",
            "kind": "algebra",
            "basis": [{"label": "1"}, {"label": "X"}],
            "product": [
                {"left": "1", "right": "1", "result": {"1": 1}},
                {"left": "1", "right": "X", "result": {"X": 1}},
                {"left": "X", "right": "1", "result": {"X": 1}},
            ],
            "unit": {"1": 1},
        }
    ],
}

NOT_ASSOCIATIVE_TABLE = {
    "schema": SCHEMA,
    "objects": [
        {
            "name": "N",
            "kind": "algebra",
            "basis": [{"label": "1"}, {"label": "a"}, {"label": "b"}],
            "product": [
                {"left": "1", "right": "1", "result": {"1": 1}},
                {"left": "1", "right": "a", "result": {"a": 1}},
                {"left": "a", "right": "1", "result": {"a": 1}},
                {"left": "1", "right": "b", "result": {"b": 1}},
                {"left": "b", "right": "1", "result": {"b": 1}},
                {"left": "a", "right": "a", "result": {"b": 1}},
                {"left": "b", "right": "a", "result": {"a": 1}},
            ],
            "unit": {"1": 1},
        }
    ],
}

TAMBARA_DUAL_NUMBERS = {
    "schema": SCHEMA,
    "objects": [
        {"name": "S", "kind": "algebra", "builder": "truncated_polynomial", "args": {"n": 2}},
    ],
    "parameters": {"truncate": 7, "pi_n": 5},
}

POLYNOMIAL_TRIVIAL = {
    "schema": SCHEMA,
    "presentation": {"name": "k[X]", "generators": [{"name": "X"}], "relations": []},
    "functionals": [
        {"name": "geometric 2", "kind": "geometric", "ratio": "2"},
        {"name": "n", "kind": "polynomial", "coefficients": ["0", "1"]},
        {"name": "n!", "kind": "factorial"},
    ],
    "parameters": {"truncate": 12},
}

POLYNOMIAL_GRADED = {
    "schema": SCHEMA,
    "group": {"free_rank": 1, "torsion": []},
    "presentation": {"name": "k[X]", "generators": [{"name": "X", "degree": "1"}], "relations": []},
    "functionals": [
        {"name": "(X^3)^*", "degree": "-3", "values": {"X^3": "1"}},
        {"name": "(X^2)^*", "degree": "-2", "values": {"X^2": "5"}},
    ],
    "parameters": {"truncate": 8},
}

FINITE_QUOTIENT = {
    "schema": SCHEMA,
    "presentation": {"name": "k[X]/(X^3)", "generators": [{"name": "X"}], "relations": ["X^3"]},
    "parameters": {"truncate": 8},
}

GEOMETRIC_FAMILY = {
    "schema": SCHEMA,
    "presentation": {"name": "k[X]", "generators": [{"name": "X"}], "relations": []},
    "ideals": [["X"], ["X - 1"], ["X - 2"], ["X^2"]],
    "parameters": {"truncate": 8},
}

# alpha(X, Y) alpha(Y, X) = 2 on the generators
NON_SYMMETRIC_TABLE = {
    "schema": SCHEMA,
    "group": {"free_rank": 2, "torsion": []},
    "bicharacter": {"kind": "matrix", "q": [["1", "2"], ["1", "3"]]},
    "objects": [
        {
            "name": "B",
            "kind": "algebra",
            "basis": [
                {"label": "1", "degree": "0,0"},
                {"label": "X", "degree": "1,0"},
                {"label": "Y", "degree": "0,1"},
                {"label": "XY", "degree": "1,1"},
            ],
            "product": [
                {"left": "1", "right": "1", "result": {"1": 1}},
                {"left": "1", "right": "X", "result": {"X": 1}},
                {"left": "X", "right": "1", "result": {"X": 1}},
                {"left": "1", "right": "Y", "result": {"Y": 1}},
                {"left": "Y", "right": "1", "result": {"Y": 1}},
                {"left": "1", "right": "XY", "result": {"XY": 1}},
                {"left": "XY", "right": "1", "result": {"XY": 1}},
                {"left": "X", "right": "Y", "result": {"XY": 1}},
            ],
            "unit": {"1": 1},
        }
    ],
}

NON_SYMMETRIC_QUOTIENT = {
    "schema": SCHEMA,
    "group": {"free_rank": 2, "torsion": []},
    "bicharacter": {"kind": "matrix", "q": [["1", "2"], ["1", "3"]]},
    "presentation": {
        "name": "B",
        "generators": [{"name": "X", "degree": "1,0"}, {"name": "Y", "degree": "0,1"}],
        "relations": ["X^2", "Y^2", "X*Y - Y*X"],
    },
    "ideals": [[]],
    "parameters": {"truncate": 5},
}

ADJUNCTION_SUPER = {
    "schema": SCHEMA,
    "group": {"free_rank": 0, "torsion": [2]},
    "bicharacter": {"kind": "super"},
    "parameters": {"cases": 100, "max_dim": 6},
}

ADJUNCTION_NON_SYMMETRIC = {
    "schema": SCHEMA,
    "group": {"free_rank": 1, "torsion": []},
    "bicharacter": {"kind": "matrix", "q": [["2"]]},
    "parameters": {"cases": 100, "max_dim": 6},
}

ADJUNCTION_ZERO = {
    "schema": SCHEMA,
    "parameters": {"cases": 10, "max_dim": 0},
}

ADJUNCTION_CYCLOTOMIC = {
    "schema": SCHEMA,
    "field": {"kind": "QCyclo", "n": 3},
    "group": {"free_rank": 0, "torsion": [3]},
    "bicharacter": {"kind": "matrix", "q": [[[0, 1]]]},
    "parameters": {"cases": 20, "max_dim": 4},
}

PROBLEMS = {
    "empty": EMPTY,
    "super_exterior": SUPER_EXTERIOR,
    "exterior_trivial": EXTERIOR_TRIVIAL,
    "group_algebra_z2": GROUP_ALGEBRA_Z2,
    "ground_field": GROUND_FIELD,
    "dual_numbers_table": DUAL_NUMBERS_TABLE,
    "not_associative_table": NOT_ASSOCIATIVE_TABLE,
    "tambara_dual_numbers": TAMBARA_DUAL_NUMBERS,
    "polynomial_trivial": POLYNOMIAL_TRIVIAL,
    "polynomial_graded": POLYNOMIAL_GRADED,
    "finite_quotient": FINITE_QUOTIENT,
    "geometric_family": GEOMETRIC_FAMILY,
    "non_symmetric_table": NON_SYMMETRIC_TABLE,
    "non_symmetric_quotient": NON_SYMMETRIC_QUOTIENT,
    "adjunction_super": ADJUNCTION_SUPER,
    "adjunction_non_symmetric": ADJUNCTION_NON_SYMMETRIC,
    "adjunction_zero": ADJUNCTION_ZERO,
    "adjunction_cyclotomic": ADJUNCTION_CYCLOTOMIC,
}

# command each bundled problem is run with by scripts/run_suite.py
COMMANDS = {
    "empty": "validate",
    "super_exterior": "dualize",
    "exterior_trivial": "validate",
    "group_algebra_z2": "dualize",
    "ground_field": "dualize",
    "dual_numbers_table": "dualize",
    "not_associative_table": "validate",
    "tambara_dual_numbers": "tambara",
    "polynomial_trivial": "finite-dual",
    "polynomial_graded": "finite-dual",
    "finite_quotient": "finite-dual",
    "geometric_family": "finite-dual",
    "non_symmetric_table": "dualize",
    "non_symmetric_quotient": "finite-dual",
    "adjunction_super": "adjunction-check",
    "adjunction_non_symmetric": "adjunction-check",
    "adjunction_zero": "adjunction-check",
    "adjunction_cyclotomic": "adjunction-check",
}
