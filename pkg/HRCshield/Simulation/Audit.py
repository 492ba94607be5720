"""
This document contains the audit of a simulated run: the executed robot motion is checked against the true human
poses, without any prediction or inflation.
"""
from typing import TYPE_CHECKING

import numpy as np
import pandas as pd

from HRCshield.VariableClasses import AUDIT_COLUMNS, AuditReport, ContactClass, ContactType, EPS_GEOM, RunResult, \
    TraceReplay, build_contact_graph, capsule_distances, capsule_intersects_polytope, connected_components

if TYPE_CHECKING:  # pragma: no cover
    from HRCshield.Simulation.Scenario import Scenario


def audit_run(result: RunResult, scenario: 'Scenario', replay: TraceReplay = None) -> AuditReport:
    """
    This function audits the executed motion of a run.
    Every logged step is compared with the true (interpolated) body parts. For every contact, the body parts
    connected to the touched part are looked up: the contact is environmentally constrained when one of them
    touches an environment element, self-constrained when one of them touches another link which can clamp with
    the contacting link and unconstrained otherwise. A contact violates its threshold when the effective energy of
    the link reaches the clamp threshold of the connected parts (constrained) or the free threshold of the touched
    part (unconstrained).

    Parameters
    ----------
    result : RunResult
        Run to audit
    scenario : Scenario
        Scenario of the run
    replay : TraceReplay
        Replay of the human trace of the run (rebuilt from the scenario if None)

    Returns
    -------
    AuditReport
    """
    model, table, config = scenario.robot, scenario.table, scenario.human_config
    if replay is None:
        replay = TraceReplay(scenario.human_trace(result.seed), config)
    log = result.log
    n = model.n
    q_all = log[[f'q{i + 1}' for i in range(n)]].to_numpy(dtype=float)
    energies_all = log[[f'energy{i + 1}_J' for i in range(n)]].to_numpy(dtype=float)

    records = []
    for row, (step, time) in enumerate(zip(log['step'].to_numpy(), log['time_s'].to_numpy())):
        parts = replay.true_parts(time)
        if not parts:
            continue
        p1, p2, radii = model.capsule_points(q_all[row])
        h_p1 = np.array([part.capsule.p1 for part in parts])
        h_p2 = np.array([part.capsule.p2 for part in parts])
        h_radii = np.array([part.capsule.radius for part in parts])
        contact = capsule_distances(p1[:, None], p2[:, None], radii[:, None], h_p1[None], h_p2[None],
                                    h_radii[None]) <= EPS_GEOM
        if not np.any(contact):
            continue
        capsules = [part.capsule for part in parts]
        component = {}
        for members in connected_components(build_contact_graph(parts, capsules, config)):
            for member in members:
                component[member] = members
        for link, j in zip(*np.nonzero(contact)):
            members = component[j]
            geometry = model.link_geometry(int(link))
            if any(capsule_intersects_polytope(capsules[m], element) for m in members
                   for element in scenario.environment):
                contact_class = ContactClass.ECC
            elif any(contact[other, m] for other in range(n) for m in members if other != link
                     and frozenset((int(link), other)) not in model.topology_exclusions):
                contact_class = ContactClass.SCC
            else:
                contact_class = ContactClass.UNCONSTRAINED
            if contact_class == ContactClass.UNCONSTRAINED:
                threshold = table.energy_threshold(parts[j].kind, geometry, ContactType.FREE)
            else:
                threshold = min(table.energy_threshold(parts[m].kind, geometry, ContactType.CLAMP) for m in members)
            energy = float(energies_all[row, link])
            records.append((int(step), float(time), int(link), parts[j].human_id, parts[j].part_id,
                            contact_class.value, energy, threshold, energy >= threshold))
    return AuditReport(pd.DataFrame(records, columns=AUDIT_COLUMNS))
