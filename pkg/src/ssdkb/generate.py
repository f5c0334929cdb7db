"""Deterministic synthetic-study generator.

Per-study sub-seeds derive from (profile seed, study index), so generation
is reproducible and order-independent. Result values come from
phase-dependent normal distributions (baseline mean 10, intervention mean
20, follow-up mean 18, sd 2) so best-result queries are non-degenerate.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field, replace
from decimal import Decimal

from . import vocab
from .kb import KnowledgeBase, graph_to_kb, study_to_triples
from .model import AgeDescription, MBDItem, Participant, Phase, PhaseKind, Result, Study
from .taxonomy import Taxonomy, core_taxonomy
from .terms import Iri, RDF_TYPE, Term, aut, ssd
from .turtle import TripleGraph

BASELINE_MEAN = 10.0
INTERVENTION_MEAN = 20.0
FOLLOW_UP_MEAN = 18.0
VALUE_SD = 2.0

CONDITIONS = ("autism", "adhd", "anxiety", "aphasia", "dyslexia")
GENDERS = ("male", "female")
SETTINGS = ("home", "school", "playground", "clinic", "workplace")

DESIGNS = (
    "AB",
    "ABAB",
    "ABAB_F",
    "AlternatingTreatment",
    "AcrossSettingMBD",
    "AcrossSubjectMBD",
    "AcrossOutcomeMBD",
)

# asserted class written into the annotations for each generated design
DESIGN_CLASS = {
    "AB": vocab.AB_DESIGN,
    "ABAB": vocab.ABAB_DESIGN,
    "ABAB_F": vocab.ABAB_DESIGN,
    "AlternatingTreatment": vocab.ALTERNATING_TREATMENT_DESIGN,
    "AcrossSettingMBD": vocab.ACROSS_SETTING_MBD,
    "AcrossSubjectMBD": vocab.ACROSS_SUBJECT_MBD,
    "AcrossOutcomeMBD": vocab.ACROSS_OUTCOME_MBD,
}


class ProfileError(Exception):
    pass


@dataclass(frozen=True)
class GenProfile:
    design_mix: dict[str, float] = field(
        default_factory=lambda: {
            "AB": 0.30,
            "ABAB": 0.20,
            "ABAB_F": 0.10,
            "AlternatingTreatment": 0.10,
            "AcrossSettingMBD": 0.10,
            "AcrossSubjectMBD": 0.10,
            "AcrossOutcomeMBD": 0.10,
        }
    )
    results_per_phase: tuple[int, int] = (4, 7)
    participants_per_study: tuple[int, int] = (1, 2)
    intervention_pool: int = 20
    outcome_pool: int = 12
    seed: int = 1

    def check(self) -> None:
        unknown = set(self.design_mix) - set(DESIGNS)
        if unknown:
            raise ProfileError(f"unknown designs in mix: {sorted(unknown)}")
        if any(w < 0 for w in self.design_mix.values()):
            raise ProfileError("design mix weights must be non-negative")
        if not any(w > 0 for w in self.design_mix.values()):
            raise ProfileError("design mix needs at least one positive weight")
        for name, (lo, hi) in (
            ("results_per_phase", self.results_per_phase),
            ("participants_per_study", self.participants_per_study),
        ):
            if lo > hi or lo < 1:
                raise ProfileError(f"empty or invalid range for {name}: ({lo}, {hi})")
        if self.intervention_pool < 2 or self.outcome_pool < 1:
            raise ProfileError("pool sizes too small")

    @classmethod
    def from_file(cls, path: str) -> "GenProfile":
        """Load from a line-oriented `key = value` file. Keys: mix.<design>,
        results_min/max, participants_min/max, intervention_pool,
        outcome_pool, seed."""
        values: dict[str, str] = {}
        with open(path, encoding="utf-8") as handle:
            for raw in handle:
                line = raw.split("#", 1)[0].strip()
                if not line:
                    continue
                if "=" not in line:
                    raise ProfileError(f"bad profile line: {raw.strip()!r}")
                key, _, val = line.partition("=")
                values[key.strip()] = val.strip()

        profile = cls()
        mix = dict(profile.design_mix)
        kwargs: dict = {}
        results = list(profile.results_per_phase)
        participants = list(profile.participants_per_study)
        for key, val in values.items():
            if key.startswith("mix."):
                mix[key[4:]] = float(val)
            elif key == "results_min":
                results[0] = int(val)
            elif key == "results_max":
                results[1] = int(val)
            elif key == "participants_min":
                participants[0] = int(val)
            elif key == "participants_max":
                participants[1] = int(val)
            elif key in ("intervention_pool", "outcome_pool", "seed"):
                kwargs[key] = int(val)
            else:
                raise ProfileError(f"unknown profile key: {key}")
        profile = replace(
            profile,
            design_mix=mix,
            results_per_phase=(results[0], results[1]),
            participants_per_study=(participants[0], participants[1]),
            **kwargs,
        )
        profile.check()
        return profile


def _pool_iris(profile: GenProfile) -> tuple[list[Iri], list[Iri]]:
    interventions = [aut(f"intv{i:03d}") for i in range(1, profile.intervention_pool + 1)]
    # keep the attested outcome individual in the pool so the published
    # example queries are answerable over generated data
    outcomes = [aut("correct_answers_wh")] + [
        aut(f"outcome{i:03d}") for i in range(2, profile.outcome_pool + 1)
    ]
    return interventions, outcomes


def _value(rng: random.Random, kind: PhaseKind) -> Decimal:
    mean = {
        PhaseKind.BASELINE: BASELINE_MEAN,
        PhaseKind.SIMPLE_INTERVENTION: INTERVENTION_MEAN,
        PhaseKind.ALTERNATING_INTERVENTION: INTERVENTION_MEAN,
        PhaseKind.FOLLOW_UP: FOLLOW_UP_MEAN,
    }[kind]
    return Decimal(f"{max(0.0, rng.gauss(mean, VALUE_SD)):.1f}")


def _signature_for(design: str) -> str:
    return {
        "AB": "BI",
        "ABAB": "BIBI",
        "ABAB_F": "BIBIF",
        "AlternatingTreatment": "BA",
    }[design]


def _make_phases(
    rng: random.Random,
    sig: str,
    prefix: str,
    interventions: list[Iri],
) -> list[Phase]:
    phases = []
    for pos, letter in enumerate(sig, start=1):
        kind = {p.value: p for p in PhaseKind}[letter]
        if kind is PhaseKind.SIMPLE_INTERVENTION:
            types: tuple[Term, ...] = (rng.choice(interventions),)
        elif kind is PhaseKind.ALTERNATING_INTERVENTION:
            types = tuple(rng.sample(interventions, 2))
        else:
            types = ()
        phases.append(
            Phase(id=ssd(f"{prefix}_ph{pos}"), kind=kind, position=pos, intervention_types=types)
        )
    return phases


def _make_results(
    rng: random.Random,
    phases: list[Phase],
    prefix: str,
    profile: GenProfile,
    start_instant: int = 1,
) -> tuple[list[Result], int]:
    results = []
    instant = start_instant
    counter = 1
    for phase in phases:
        lo, hi = profile.results_per_phase
        for _ in range(rng.randint(lo, hi)):
            if phase.kind in (PhaseKind.SIMPLE_INTERVENTION, PhaseKind.ALTERNATING_INTERVENTION):
                itype = rng.choice(phase.intervention_types)
            else:
                itype = None
            results.append(
                Result(
                    id=ssd(f"{prefix}_res{counter:03d}"),
                    value=_value(rng, phase.kind),
                    instant=instant,
                    phase_ref=phase.id,
                    intervention_type=itype,
                )
            )
            counter += 1
            instant += 1
    return results, instant


def _make_participant(rng: random.Random, prefix: str, index: int) -> Participant:
    years = rng.randint(2, 16)
    months = rng.randint(0, 11)
    diag_years = rng.randint(1, years)
    return Participant(
        id=ssd(f"{prefix}_p{index}"),
        condition=ssd(rng.choice(CONDITIONS)),
        gender=ssd(rng.choice(GENDERS)),
        age=AgeDescription(years=years, months=months),
        diagnosed_at_age=AgeDescription(years=diag_years),
    )


def _generate_study(index: int, profile: GenProfile, pools) -> Study:
    rng = random.Random(profile.seed * 1_000_003 + index)
    interventions, outcomes = pools
    prefix = f"study{index:05d}"
    study_id = ssd(prefix)

    names = sorted(profile.design_mix)
    weights = [profile.design_mix[n] for n in names]
    design = rng.choices(names, weights=weights, k=1)[0]

    n_participants = rng.randint(*profile.participants_per_study)
    participants = tuple(
        _make_participant(rng, prefix, i + 1) for i in range(n_participants)
    )

    if design in ("AB", "ABAB", "ABAB_F", "AlternatingTreatment"):
        phases = _make_phases(rng, _signature_for(design), prefix, interventions)
        results, _ = _make_results(rng, phases, prefix, profile)
        return Study(
            id=study_id,
            participants=participants,
            outcomes=(rng.choice(outcomes),),
            phases=tuple(phases),
            results=tuple(results),
            asserted_class=DESIGN_CLASS[design],
        )

    # multiple-baseline designs: 2-3 parallel items, varying in one dimension
    n_items = rng.randint(2, 3)
    base_outcome = rng.choice(outcomes)
    base_setting = ssd(rng.choice(SETTINGS))
    base_subject = participants[0].id
    if design == "AcrossSettingMBD":
        settings = [ssd(s) for s in rng.sample(SETTINGS, n_items)]
        dims = [(base_subject, settings[i], base_outcome) for i in range(n_items)]
    elif design == "AcrossSubjectMBD":
        while len(participants) < n_items:
            participants = participants + (
                _make_participant(rng, prefix, len(participants) + 1),
            )
        dims = [(participants[i].id, base_setting, base_outcome) for i in range(n_items)]
    else:  # AcrossOutcomeMBD
        item_outcomes = rng.sample(outcomes, n_items)
        dims = [(base_subject, base_setting, item_outcomes[i]) for i in range(n_items)]

    items = []
    all_results = []
    instant = 1
    for i, (subject, setting, outcome) in enumerate(dims, start=1):
        item_prefix = f"{prefix}_item{i}"
        phases = _make_phases(rng, "BI", item_prefix, interventions)
        results, instant = _make_results(rng, phases, item_prefix, profile, instant)
        all_results.extend(results)
        items.append(
            MBDItem(
                id=ssd(item_prefix),
                subject=subject,
                setting=setting,
                outcome=outcome,
                phases=tuple(phases),
            )
        )
    return Study(
        id=study_id,
        participants=participants,
        outcomes=(base_outcome,),
        mbd_items=tuple(items),
        mbd_item_type=vocab.SIMPLE_DESIGN,
        results=tuple(all_results),
        asserted_class=DESIGN_CLASS[design],
    )


def generated_design(index: int, profile: GenProfile) -> str:
    """The design label sampled for study `index` (for label-vs-classifier
    checks)."""
    rng = random.Random(profile.seed * 1_000_003 + index)
    names = sorted(profile.design_mix)
    weights = [profile.design_mix[n] for n in names]
    return rng.choices(names, weights=weights, k=1)[0]


def generate_graph(n: int, profile: GenProfile | None = None) -> TripleGraph:
    profile = profile or GenProfile()
    profile.check()
    if n < 0:
        raise ProfileError("study count must be non-negative")
    interventions, outcomes = _pool_iris(profile)
    graph = TripleGraph()
    if n > 0:
        for iri in interventions:
            graph.add(iri, RDF_TYPE, vocab.PEER_MEDIATED_INTERVENTION)
        for iri in outcomes:
            graph.add(iri, RDF_TYPE, vocab.COMMUNICATION_OUTCOME)
            graph.add(iri, vocab.IN_FORM_OF, ssd("percentage"))
    for index in range(n):
        study = _generate_study(index, profile, (interventions, outcomes))
        graph.triples |= study_to_triples(study)
    return graph


def generate_studies(
    n: int, profile: GenProfile | None = None, taxonomy: Taxonomy | None = None
) -> KnowledgeBase:
    """A valid knowledge base of `n` synthetic studies; identical inputs
    produce identical kbs."""
    graph = generate_graph(n, profile)
    return graph_to_kb(graph, taxonomy or core_taxonomy())
