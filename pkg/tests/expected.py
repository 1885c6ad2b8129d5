"""Frozen expected values.  Groups are written as strings in the library's
display format so that a change in either the value or the format shows up.
"""

LENS_INTEGRAL = {  # q -> H_0..H_3 of L(q,1)
    1: ("Z", "0", "0", "Z"),
    2: ("Z", "Z_2", "0", "Z"),
    3: ("Z", "Z_3", "0", "Z"),
    5: ("Z", "Z_5", "0", "Z"),
    7: ("Z", "Z_7", "0", "Z"),
}

LENS_INTEGRAL_COHOMOLOGY_5 = ("Z", "0", "Z_5", "Z")

# coprime coefficients see a homology 3-sphere
LENS_MOD_COPRIME = lambda p: (f"Z_{p}", "0", "0", f"Z_{p}")

# same prime: Tor(H_1; Z_q) = Z_q lands in degree 2
LENS_MOD_SAME_5 = ("Z_5", "Z_5", "Z_5", "Z_5")

SUSPENSION_LENS_5 = ("Z", "0", "Z_5", "0", "Z")
SUSPENSION_SPHERE = ("Z", "0", "0", "0", "Z")

SNF_DIAG_2448 = (2, 0)

PRIME_SETS = ("2", "2,3", "3,5,7", "all", "all-except:2")
SMALL_PRIMES = (2, 3, 5, 7, 11, 13)

# the four table families for p in P, by degree 0..3
LOCAL_IN = lambda p: ("0", "0", "0", f"Z_{p}")
COMPLEMENT_IN = lambda p: (f"Z_{p}", "0", "0", "0")
PAIR_IN = lambda p: ("0", "0", "0", f"Z_{p}")

# q not in P
LOCAL_OUT = lambda q: ("0", "0", f"Z_{q}", f"Z_{q}")
COMPLEMENT_OUT = lambda q: (f"Z_{q}", f"Z_{q}", "0", "0")

LOCAL_Z = {
    "2": ("0", "0", "Z[1/p : p in {2}]", "Z"),
    "2,3": ("0", "0", "Z[1/p : p in {2,3}]", "Z"),
    "all": ("0", "0", "Q", "Z"),
}
LOCAL_Q = ("0", "0", "Q", "Q")
COMPLEMENT_Q = ("Q", "Q", "0", "0")
COMPLEMENT_Z_DEGREE_1 = "0"

# classification for P = {2,3}
CLASSIFY_23 = {
    "mod:2": (True, True),
    "mod:3": (True, True),
    "mod:5": (False, False),
    "Z": (False, False),
    "Q": (False, False),
}
