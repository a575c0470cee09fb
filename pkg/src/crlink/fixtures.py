"""The two golden fixtures and their verification suites.

Figure-eight knot: two regular tetrahedra glued along a face, side pairings
synthesized from point triples, conjugated into the normal frame, and diffed
against the published generator matrices in SU(2,1, Z[omega]).  Whitehead
link: four tetrahedra forming a right-angled octahedron, generators in
SU(2,1, Z[i]).  Everything is re-derived from the geometry and compared to
the stored matrices entry by entry; discrepancies surface as localized report
items, never as silent corrections.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

from .scalars import CycloNumber, I, ONE, OMEGA, OMEGA_BAR, SQRT2, SQRT3, ZERO
from .heisenberg import HPoint, INFINITY
from .isometry import (
    IsometryClass,
    Mat3,
    PARABOLIC,
    ProjIsometry,
    check_unitary,
    classify,
    eval_word,
    from_triples,
    inversion,
    matrix_in_ring,
    translation_part,
)
from .tetra import Tetrahedron, params_from_points
from .complexes import (
    FacePairing,
    GluingScheme,
    cartan_compatibility,
    figure_eight_scheme,
    regular_params,
    symmetric_gluing_solver,
)
from .report import Report


# ---------------------------------------------------------------------------
# golden data
# ---------------------------------------------------------------------------


def fig8_golden_matrices() -> Dict[str, Mat3]:
    w, wb = OMEGA, OMEGA_BAR
    return {
        "G1": Mat3([[1, w, -w], [0, 1, -wb], [0, 0, 1]]),
        "G2": Mat3([[1, 1, -w], [-1, 0, -wb], [-wb, w, 1]]),
        "G3": Mat3([[1, 1, -w], [-w, wb, -1 - wb], [-wb, 0, 1 + w]]),
        "H1": Mat3([[1, 0, 0], [-2 * wb, 1, 0], [-2 * w - 1, 2 * w, 1]]),
        "H2": Mat3([[1, 0, 0], [wb, 1, 0], [-w, -w, 1]]),
    }


def picard_generators() -> Dict[str, ProjIsometry]:
    w = OMEGA
    return {
        "P": ProjIsometry(Mat3([[1, 1, -w], [0, -w, w], [0, 0, 1]])),
        "Q": ProjIsometry(Mat3([[1, 1, -w], [0, -1, 1], [0, 0, 1]])),
        "I": inversion(),
    }


def whitehead_golden_matrices() -> Dict[str, Mat3]:
    i = I
    return {
        "G1": Mat3([[1, 0, -i], [-1 - i, 1, -1 + i], [-1 - i, 1 - i, i]]),
        "G2": Mat3([[1, 1 - i, -1 + i], [-1 - i, -1, 1 - i], [-1 + i, 1 + i, -1 - 2 * i]]),
        "G3": Mat3([[i, 1 + i, -i], [1 - i, -1 - 2 * i, 2 * i], [-1 - i, -3 + i, 3 + 2 * i]]),
        "G4": Mat3([[-i, 0, 0], [-1 + i, -1, 0], [-1 + i, -1 + i, -i]]),
        "H1": Mat3(
            [
                [-1 - 6 * i, -6 - 4 * i, 2 + 4 * i],
                [-4 + 6 * i, 1 + 8 * i, 2 - 4 * i],
                [2 + 4 * i, 4 + 2 * i, -1 - 2 * i],
            ]
        ),
        "H1'": Mat3(
            [
                [5, 2 - 6 * i, -4],
                [-8 - 4 * i, -7 + 8 * i, 6 + 2 * i],
                [-8 + 8 * i, 8 + 12 * i, 5 - 8 * i],
            ]
        ),
    }


# Picard-word identities for the figure-eight holonomy.  Two of the published
# word lines contain small typos; the corrected forms below are certified
# exactly, and the discrepancy of each published form is itself verified and
# reported (the published G2 word evaluates to G1^-1 G2 G1; the published A
# conjugator differs in one transposed factor).
PICARD_WORDS_PUBLISHED = {
    "G1": "P Q^-1 P^2 Q^-1",
    "G2": "I Q P^-2 Q P^-1 I P Q^-1 P^2 Q^-1",
    "H2": "I P Q^-1 P^2 Q^-1 I",
    # H1 = I (Q P^-1 Q (P Q^-1)^-2)^2 I, expanded
    "H1": "I Q P^-1 Q Q P^-1 Q P^-1 Q P^-1 Q Q P^-1 Q P^-1 I",
    "A_published": "P Q^-2 P Q^-1 P Q^-1 I Q P^-1 Q P^-1 P",
}

PICARD_WORDS_CORRECTED = {
    "G2": "G1 I G1^-1 I",
    "A": "P Q^-2 P Q^-1 P Q^-1 I P Q^-1 P Q^-1 P",
}


# ---------------------------------------------------------------------------
# cusp analysis
# ---------------------------------------------------------------------------


@dataclass
class CuspEntry:
    name: str
    word: str
    isometry: ProjIsometry
    classification: Optional[IsometryClass]
    translation: Optional[Tuple[CycloNumber, CycloNumber]]
    golden_scalar: Optional[CycloNumber]


@dataclass
class CuspData:
    name: str
    entries: List[CuspEntry]
    commutes: Optional[bool] = None
    faithful_window: Optional[int] = None
    faithful: Optional[bool] = None


def cusp_analysis(
    env: Dict[str, ProjIsometry],
    words: Dict[str, str],
    goldens: Optional[Dict[str, Mat3]] = None,
    check_commutative: bool = False,
    faithfulness_window: int = 0,
    name: str = "cusp",
) -> CuspData:
    """Evaluate boundary-torus words and analyze the resulting maps.

    Each word is evaluated exactly and optionally diffed against a stored
    matrix (scalar recorded).  Parabolics fixing the origin are conjugated by
    the inversion to expose their Heisenberg translation part.  Optionally
    verifies that the first two entries commute and that no mixed power
    within the window is the identity class.
    """
    inv = inversion()
    origin = HPoint.exact(0, 0)
    entries = []
    for wname, word in words.items():
        g = eval_word(word, env) if word else ProjIsometry.identity()
        cls = classify(g) if g.holo else None
        translation = None
        if cls is not None and cls.kind == PARABOLIC and g.act(origin) == origin:
            translation = translation_part(inv @ g @ inv)
        scalar = None
        if goldens and wname in goldens:
            scalar = g.unit_scalar_to(ProjIsometry(goldens[wname], check=False))
        entries.append(CuspEntry(wname, word, g, cls, translation, scalar))
    data = CuspData(name, entries)
    if check_commutative and len(entries) >= 2:
        a, b = entries[0].isometry, entries[1].isometry
        data.commutes = (a @ b @ a.inverse() @ b.inverse()).is_identity_class()
    if faithfulness_window and len(entries) >= 2:
        a, b = entries[0].isometry.matrix, entries[1].isometry.matrix
        window = range(-faithfulness_window, faithfulness_window + 1)
        pow_a = {k: a ** k for k in window}
        pow_b = {k: b ** k for k in window}
        data.faithful_window = faithfulness_window
        data.faithful = not any(
            (pow_a[x] * pow_b[y]).is_scalar() is not None
            for x in window
            for y in window
            if (x, y) != (0, 0)
        )
    return data


# ---------------------------------------------------------------------------
# figure-eight fixture
# ---------------------------------------------------------------------------


@dataclass
class HolonomyRep:
    name: str
    generators: Dict[str, ProjIsometry]
    ring: str
    word_identities: Dict[str, str]
    cusps: List[CuspData] = field(default_factory=list)

    def env(self) -> Dict[str, ProjIsometry]:
        return dict(self.generators)


@dataclass
class Fig8Fixture:
    vertices: Dict[str, HPoint]
    tetrahedra: Dict[str, Tetrahedron]
    scheme: GluingScheme
    side_pairings: Dict[str, ProjIsometry]
    gamma: ProjIsometry
    derived: Dict[str, ProjIsometry]
    golden: Dict[str, Mat3]
    golden_scalars: Dict[str, Optional[CycloNumber]]
    pairing_notes: Dict[str, str]
    rep: HolonomyRep


def fig8_vertices() -> Dict[str, HPoint]:
    return {
        "p1": HPoint.exact(ZERO, 2 + SQRT3),
        "p2": HPoint.exact(ZERO, -(2 + SQRT3)),
        "q1": HPoint.exact(OMEGA, 0),
        "q2": HPoint.exact(ONE, 0),
        "q3": HPoint.exact(OMEGA_BAR, 0),
    }


def fig8_realized_scheme() -> GluingScheme:
    """Both tetrahedra realized in Heisenberg coordinates, sharing a face.

    The second tetrahedron (p1, p2, q2, q3) takes roles (p1, p2, q1, q2).
    The g2 pairing uses the correspondence q1 -> q2, q2 -> q3 that the
    published matrix implements.
    """
    v = fig8_vertices()
    t_tet = Tetrahedron(v["p1"], v["p2"], v["q1"], v["q2"])
    u_tet = Tetrahedron(v["p1"], v["p2"], v["q2"], v["q3"])
    pairings = [
        FacePairing("T", ("p1", "p2", "q2"), "U", ("p1", "p2", "q1")),  # shared
        FacePairing("T", ("q2", "q1", "p1"), "U", ("q2", "p2", "p1")),  # g1
        FacePairing("T", ("p2", "q1", "q2"), "U", ("p1", "q1", "q2")),  # g2
        FacePairing("T", ("q1", "p2", "p1"), "U", ("q1", "p2", "q2")),  # g3
    ]
    return GluingScheme(
        ["T", "U"],
        pairings,
        letters={"T": "z", "U": "w"},
        vertices={"T": t_tet, "U": u_tet},
    )


def build_figure_eight() -> Fig8Fixture:
    """Synthesize the figure-eight holonomy from the geometry.

    Side pairings come from triple transport; each is conjugated by the
    normal-frame map and diffed against the stored matrix.  The g2 pairing
    is stated in the source with target order (p1, q3, q2), which transports
    to an anti-holomorphic map; the published matrix implements
    (p1, q2, q3).  Both facts are recorded.
    """
    v = fig8_vertices()
    golden = fig8_golden_matrices()
    gamma = from_triples(
        (INFINITY, HPoint.exact(0, 0), HPoint.exact(ONE, -SQRT3)),
        (v["p1"], v["q2"], v["q1"]),
    )
    side = {
        "g1": from_triples((v["q2"], v["q1"], v["p1"]), (v["q3"], v["p2"], v["p1"])),
        "g2": from_triples((v["p2"], v["q1"], v["q2"]), (v["p1"], v["q2"], v["q3"])),
        "g3": from_triples((v["q1"], v["p2"], v["p1"]), (v["q2"], v["p2"], v["q3"])),
    }
    notes = {
        "conjugation": "G = gamma^-1 g gamma (pinned by golden G1)",
        "g2": "stated target order (p1,q3,q2) transports anti-holomorphically; "
        "golden matrix implements (p1,q2,q3)",
    }
    derived = {}
    scalars: Dict[str, Optional[CycloNumber]] = {}
    for k in ("g1", "g2", "g3"):
        gk = gamma.inverse() @ side[k] @ gamma
        name = "G" + k[1]
        derived[name] = gk
        scalars[name] = gk.unit_scalar_to(ProjIsometry(golden[name], check=False))
    generators = {
        "G1": ProjIsometry(golden["G1"]),
        "G2": ProjIsometry(golden["G2"]),
        "G3": ProjIsometry(golden["G3"]),
    }
    rep = HolonomyRep(
        name="figure-eight knot",
        generators=generators,
        ring="Z[omega]",
        word_identities={
            "H1": "G1^-1 G3 G1^-1 G2 G3^-1 G1 G3^-1",
            "H2": "G2^-1 G1",
        },
    )
    cusp = cusp_analysis(
        rep.env(),
        rep.word_identities,
        goldens={"H1": golden["H1"], "H2": golden["H2"]},
        check_commutative=True,
        faithfulness_window=5,
        name="knot torus",
    )
    rep.cusps.append(cusp)
    scheme = fig8_realized_scheme()
    return Fig8Fixture(
        vertices=v,
        tetrahedra={"T": scheme.vertices["T"], "U": scheme.vertices["U"]},
        scheme=scheme,
        side_pairings=side,
        gamma=gamma,
        derived=derived,
        golden=golden,
        golden_scalars=scalars,
        pairing_notes=notes,
        rep=rep,
    )


def verify_figure_eight() -> Report:
    rep = Report("figure-eight knot")
    fx = build_figure_eight()
    golden = fx.golden
    for k in ("G1", "G2", "G3"):
        g = ProjIsometry(golden[k])
        ok, lam = check_unitary(golden[k])
        rep.add(f"01 golden {k} form identity M*JM=J", ok and lam == ONE, str(lam))
        rep.add(f"02 golden {k} det = 1", golden[k].det() == ONE, str(golden[k].det()))
        rep.add(f"03 golden {k} entries in Z[omega]", matrix_in_ring(g, "Z[omega]"))
        scalar = fx.golden_scalars[k]
        rep.add(
            f"04 derived side pairing reproduces {k} (unit scalar)",
            scalar is not None,
            None if scalar is None else str(scalar),
        )
    rep.info("05 conjugation direction", fx.pairing_notes["conjugation"])
    rep.info("05 g2 correspondence", fx.pairing_notes["g2"])
    cls = {k: classify(ProjIsometry(golden[k])) for k in ("G1", "G2", "G3")}
    rep.add("06 G1 parabolic", cls["G1"].kind == PARABOLIC, str(cls["G1"]))
    rep.add("06 G3 parabolic", cls["G3"].kind == PARABOLIC, str(cls["G3"]))
    rep.add("06 G2 elliptic", cls["G2"].is_elliptic, str(cls["G2"]))

    # cusp holonomy
    cusp = fx.rep.cusps[0]
    by_name = {e.name: e for e in cusp.entries}
    h1, h2 = by_name["H1"], by_name["H2"]
    rep.add(
        "07 H2 word equals displayed matrix exactly",
        h2.isometry.matrix == golden["H2"],
    )
    lam = h1.isometry.matrix.scalar_ratio(golden["H1"])
    rep.add(
        "07 H1 word equals displayed matrix up to unit scalar",
        h1.golden_scalar is not None,
        None if lam is None else str(lam),
    )
    pivot = h1.isometry.matrix[2, 2]
    rep.add(
        "07 H1 unipotent normalization equals displayed matrix exactly",
        not pivot.is_zero()
        and h1.isometry.matrix * pivot.inverse() == golden["H1"],
        f"word product carries unit scalar {pivot}",
    )
    for e, nm in ((h1, "H1"), (h2, "H2")):
        rep.add(f"08 {nm} parabolic", e.classification.kind == PARABOLIC, str(e.classification))
    rep.add("09 cusp group commutes", bool(cusp.commutes))
    rep.add(
        "10 cusp faithfulness window 5 (H1^a H2^b != Id)", bool(cusp.faithful)
    )
    inv = inversion()
    rep.add(
        "11 I H2 I = G1 exactly",
        (inv @ by_name["H2"].isometry @ inv).matrix == golden["G1"],
    )
    env = fx.rep.env()
    h1h2sq = eval_word("H1 H2^2", {**env, "H1": h1.isometry, "H2": h2.isometry})
    z0, t0 = translation_part(inv @ h1h2sq @ inv)
    rep.add(
        "12 I(H1 H2^2)I is the vertical translation (0, 4 sqrt3)",
        z0.is_zero() and t0 == 4 * SQRT3,
        {"z0": str(z0), "t0": str(t0)},
    )
    for e, want_mod2, want_t in ((h1, 4, 2 * SQRT3), (h2, 1, SQRT3)):
        z0, t0 = e.translation
        rep.add(
            f"13 {e.name} translation modulus/vertical part",
            (z0 * z0.conj()) == CycloNumber.from_rational(want_mod2) and t0 == want_t,
            {"z0": str(z0), "t0": str(t0)},
        )
        rep.info(
            f"13 {e.name} translation argument (omega-vs-conj convention reported)",
            str(z0),
        )

    # the realized two-tetrahedron complex
    scheme = fx.scheme
    for item in scheme.pairing_invariants():
        rep.add(f"14 paired faces eta-equal: {item['pairing']}", item["equal"])
    for tname, tet in fx.tetrahedra.items():
        params = params_from_points(tet)
        rep.add(
            f"15 tetra {tname} regular with invariant exp(i pi/3)",
            params.z1 == OMEGA_BAR and params.z1t == OMEGA_BAR
            and params.t == SQRT3 and params.s == SQRT3,
            params.summary(),
        )

    # gluing equations on the abstract scheme at the regular solution
    abstract = figure_eight_scheme()
    params = regular_params(OMEGA_BAR)
    eqs = abstract.edge_equations({"T": params, "U": params})
    rep.add(
        "16 edge equations all equal 1 at the regular solution",
        all(eq.holds() for eq in eqs),
        [eq.raw_form() for eq in eqs],
    )
    compat = cartan_compatibility(params, params)
    rep.add(
        "17 invariant compatibility residuals vanish",
        all(c["holds"] for c in compat),
    )
    solver = symmetric_gluing_solver()
    rep.add(
        "18 symmetric gluing solver returns exactly {exp(i pi/3)}",
        solver["unique"] == OMEGA_BAR and len(solver["survivors"]) == 1,
        {"survivors": [str(s) for s in solver["survivors"]]},
    )
    return rep


# ---------------------------------------------------------------------------
# Picard word suite
# ---------------------------------------------------------------------------


def verify_picard_words() -> Report:
    rep = Report("eisenstein-picard words")
    golden = fig8_golden_matrices()
    env = picard_generators()
    env_g = {**env, "G1": ProjIsometry(golden["G1"]), "G2": ProjIsometry(golden["G2"])}

    rep.add("01 I^2 is the identity class", (env["I"] @ env["I"]).is_identity_class())

    g1w = eval_word(PICARD_WORDS_PUBLISHED["G1"], env)
    rep.add(
        "02 G1 = PQ^-1P^2Q^-1 exactly", g1w.matrix == golden["G1"],
    )
    h2w = eval_word(PICARD_WORDS_PUBLISHED["H2"], env)
    rep.add("03 H2 = I PQ^-1P^2Q^-1 I exactly", h2w.matrix == golden["H2"])
    h1w = eval_word(PICARD_WORDS_PUBLISHED["H1"], env)
    lam = h1w.unit_scalar_to(ProjIsometry(golden["H1"], check=False))
    rep.add(
        "04 H1 word reproduces displayed matrix (unit scalar)",
        lam is not None,
        None if lam is None else str(lam),
    )

    # published G2 word: verify what it actually equals, then the corrected form
    g2_pub = eval_word(PICARD_WORDS_PUBLISHED["G2"], env)
    conj_g2 = eval_word("G1^-1 G2 G1", env_g)
    rep.add(
        "05 published G2 word evaluates to G1^-1 G2 G1 (documented typo)",
        g2_pub.unit_scalar_to(conj_g2) is not None,
    )
    g2_fix = eval_word(PICARD_WORDS_CORRECTED["G2"], env_g)
    rep.add(
        "06 corrected identity G2 = G1 I G1^-1 I exactly",
        g2_fix.matrix == golden["G2"],
    )

    # conjugator words for G3
    a_pub = eval_word(PICARD_WORDS_PUBLISHED["A_published"], env)
    g3_pub = a_pub @ h2w_conj(env, h2w) @ a_pub.inverse()
    rep.add(
        "07 published conjugator sends infinity to the G3 fixed point",
        a_pub.act(INFINITY) == HPoint.exact(OMEGA, -SQRT3),
    )
    rep.info(
        "08 published A-word conjugation misses G3 (documented typo)",
        "matches" if g3_pub.same_class(ProjIsometry(golden["G3"])) else "mismatch",
    )
    a_fix = eval_word(PICARD_WORDS_CORRECTED["A"], env)
    g3_fix = a_fix @ h2w_conj(env, h2w) @ a_fix.inverse()
    rep.add(
        "09 corrected A-word: G3 = A I H2 I A^-1 exactly",
        g3_fix.matrix == golden["G3"],
    )
    rep.add(
        "10 derived identity G2^-1 G1 = I G1 I exactly",
        eval_word("G2^-1 G1", env_g).matrix == (env["I"] @ ProjIsometry(golden["G1"]) @ env["I"]).matrix,
    )
    return rep


def h2w_conj(env, h2w: ProjIsometry) -> ProjIsometry:
    """I H2 I built from the Picard-generator fixtures."""
    return env["I"] @ h2w @ env["I"]


# ---------------------------------------------------------------------------
# Whitehead fixture
# ---------------------------------------------------------------------------


def whitehead_vertices() -> Dict[str, HPoint]:
    return {
        "p1": HPoint.exact(ZERO, 1 + SQRT2),
        "p2": HPoint.exact(ZERO, -(1 + SQRT2)),
        "q1": HPoint.exact(ONE, 0),
        "q2": HPoint.exact(I, 0),
        "q3": HPoint.exact(-ONE, 0),
        "q4": HPoint.exact(-I, 0),
    }


def whitehead_scheme() -> GluingScheme:
    """Four tetrahedra around the vertical axis, tiling the octahedron.

    Tetra k has equatorial vertices (q_k, q_{k+1}); internal faces through
    the poles are glued by coordinate identity, the outer faces by the four
    published side pairings.
    """
    v = whitehead_vertices()
    qn = ["q1", "q2", "q3", "q4"]
    tets = {}
    for k in range(4):
        name = f"T{k + 1}"
        tets[name] = Tetrahedron(v["p1"], v["p2"], v[qn[k]], v[qn[(k + 1) % 4]])
    pairings = [
        FacePairing("T1", ("p1", "p2", "q2"), "T2", ("p1", "p2", "q1")),
        FacePairing("T2", ("p1", "p2", "q2"), "T3", ("p1", "p2", "q1")),
        FacePairing("T3", ("p1", "p2", "q2"), "T4", ("p1", "p2", "q1")),
        FacePairing("T4", ("p1", "p2", "q2"), "T1", ("p1", "p2", "q1")),
        FacePairing("T1", ("p1", "q1", "q2"), "T2", ("q1", "q2", "p2")),  # g_A
        FacePairing("T2", ("p1", "q1", "q2"), "T3", ("q2", "p2", "q1")),  # g_B
        FacePairing("T3", ("p1", "q1", "q2"), "T4", ("q1", "q2", "p2")),  # g_C
        FacePairing("T4", ("p1", "q1", "q2"), "T1", ("q2", "p2", "q1")),  # g_D
    ]
    return GluingScheme(
        list(tets),
        pairings,
        letters={"T1": "z", "T2": "w", "T3": "v", "T4": "u"},
        vertices=tets,
        cusps=[
            {"name": "first torus", "words": {"H1": "G3^-1 G1^-1", "H2": "G2"}},
            {"name": "second torus", "words": {"H1'": "G3 G1^-2 G3", "H2'": ""}},
        ],
    )


@dataclass
class WhiteheadFixture:
    vertices: Dict[str, HPoint]
    scheme: GluingScheme
    side_pairings: Dict[str, ProjIsometry]
    normal_map: ProjIsometry
    derived: Dict[str, ProjIsometry]
    golden: Dict[str, Mat3]
    golden_scalars: Dict[str, Optional[CycloNumber]]
    rep: HolonomyRep


def build_whitehead() -> WhiteheadFixture:
    v = whitehead_vertices()
    golden = whitehead_golden_matrices()
    nu = from_triples(
        (v["p1"], v["q1"], v["q2"]),
        (INFINITY, HPoint.exact(0, 0), HPoint.exact(ONE, ONE)),
    )
    triples = {
        "G1": ((v["p1"], v["q1"], v["q2"]), (v["q2"], v["q3"], v["p2"])),
        "G2": ((v["p1"], v["q2"], v["q3"]), (v["q4"], v["p2"], v["q3"])),
        "G3": ((v["p1"], v["q3"], v["q4"]), (v["q4"], v["q1"], v["p2"])),
        "G4": ((v["p1"], v["q4"], v["q1"]), (v["q2"], v["p2"], v["q1"])),
    }
    side = {}
    derived = {}
    scalars: Dict[str, Optional[CycloNumber]] = {}
    for name, (src, dst) in triples.items():
        g = from_triples(src, dst)
        side[name] = g
        gk = nu @ g @ nu.inverse()
        derived[name] = gk
        scalars[name] = gk.unit_scalar_to(ProjIsometry(golden[name], check=False))
    generators = {k: ProjIsometry(golden[k]) for k in ("G1", "G2", "G3", "G4")}
    rep = HolonomyRep(
        name="whitehead link",
        generators=generators,
        ring="Z[i]",
        word_identities={"H1": "G3^-1 G1^-1", "H1'": "G3 G1^-2 G3"},
    )
    rep.cusps.append(
        cusp_analysis(
            rep.env(),
            {"H1": "G3^-1 G1^-1", "H2": "G2"},
            goldens={"H1": golden["H1"]},
            name="first torus",
        )
    )
    rep.cusps.append(
        cusp_analysis(
            rep.env(),
            {"H1'": "G3 G1^-2 G3", "H2'": ""},
            goldens={"H1'": golden["H1'"]},
            name="second torus",
        )
    )
    return WhiteheadFixture(
        vertices=v,
        scheme=whitehead_scheme(),
        side_pairings=side,
        normal_map=nu,
        derived=derived,
        golden=golden,
        golden_scalars=scalars,
        rep=rep,
    )


def verify_whitehead() -> Report:
    rep = Report("whitehead link")
    fx = build_whitehead()
    golden = fx.golden
    i = I
    for k in ("G1", "G2", "G3", "G4"):
        ok, lam = check_unitary(golden[k])
        rep.add(f"01 golden {k} form identity M*JM=J", ok and lam == ONE)
        rep.add(f"02 golden {k} det = 1", golden[k].det() == ONE)
        rep.add(f"03 golden {k} entries in Z[i]", matrix_in_ring(ProjIsometry(golden[k]), "Z[i]"))
        scalar = fx.golden_scalars[k]
        rep.add(
            f"04 derived side pairing reproduces {k} (unit scalar)",
            scalar is not None,
            None if scalar is None else str(scalar),
        )
    tr = {k: golden[k].trace() for k in ("G1", "G2", "G3", "G4")}
    rep.add("05 trace G1 = 2+i", tr["G1"] == 2 + i, str(tr["G1"]))
    rep.add("05 trace G3 = 2+i", tr["G3"] == 2 + i, str(tr["G3"]))
    rep.add("05 trace G2 = -1-2i", tr["G2"] == -1 - 2 * i, str(tr["G2"]))
    rep.add("05 trace G4 = -1-2i", tr["G4"] == -1 - 2 * i, str(tr["G4"]))
    cls = {k: classify(ProjIsometry(golden[k])) for k in ("G1", "G2", "G3", "G4")}
    rep.add("06 G1, G3 loxodromic", cls["G1"].kind == "Loxodromic" and cls["G3"].kind == "Loxodromic")
    rep.add(
        "06 G2, G4 elliptic of order four",
        cls["G2"].is_elliptic and cls["G4"].is_elliptic
        and cls["G2"].elliptic_order == 4 and cls["G4"].elliptic_order == 4,
    )
    rep.add(
        "07 G2^4 and G4^4 scalar",
        (golden["G2"] ** 4).is_scalar() is not None
        and (golden["G4"] ** 4).is_scalar() is not None,
    )

    cusp1, cusp2 = fx.rep.cusps
    e1 = {e.name: e for e in cusp1.entries}
    rep.add("08 H1 = G3^-1 G1^-1 equals displayed matrix exactly",
            e1["H1"].isometry.matrix == golden["H1"])
    rep.add("09 trace H1 = -1", e1["H1"].isometry.matrix.trace() == -ONE)
    rep.add("10 H1 parabolic (f = 0, non-semisimple)",
            e1["H1"].classification.kind == PARABOLIC,
            str(e1["H1"].classification))
    rep.add("11 H2 = G2 elliptic", e1["H2"].classification.is_elliptic,
            str(e1["H2"].classification))
    e2 = {e.name: e for e in cusp2.entries}
    rep.add("12 H1' = G3 G1^-2 G3 equals displayed matrix exactly",
            e2["H1'"].isometry.matrix == golden["H1'"])
    rep.add("13 trace H1' = 3", e2["H1'"].isometry.matrix.trace() == 3 * ONE)
    rep.add("14 H1' parabolic", e2["H1'"].classification.kind == PARABOLIC,
            str(e2["H1'"].classification))
    rep.add("15 H2' recorded as the identity (holonomy not faithful)",
            e2["H2'"].isometry.is_identity_class())

    for item in fx.scheme.pairing_invariants():
        rep.add(f"16 paired faces eta-equal: {item['pairing']}", item["equal"])
    for tname in fx.scheme.tetrahedra:
        params = params_from_points(fx.scheme.vertices[tname])
        rep.add(
            f"17 tetra {tname} has invariant i with t = s = 1",
            params.z1 == i and params.z1t == i and params.t == ONE and params.s == ONE,
            params.summary(),
        )
    return rep


def verify_all() -> List[Report]:
    return [verify_figure_eight(), verify_whitehead(), verify_picard_words()]
