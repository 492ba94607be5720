"""
This document contains the governors which gate the intended motion with the shield.
"""
from HRCshield.Baselines._Governor import _Governor, MethodId
from HRCshield.Shield import Shield
from HRCshield.VariableClasses import ContactMode, HumanSnapshot, ShieldSetup, TrajectoryStep


class _ShieldGovernor(_Governor):
    """
    Plans the intended steps at the nominal speed and executes them only when the shield verifies them.
    """

    contact_mode: ContactMode = ContactMode.FULL

    def __init__(self, *args, shield_setup: ShieldSetup = None, **kwargs):
        """

        Parameters
        ----------
        shield_setup : ShieldSetup
            Settings of the shield, the time step and contact mode are set by the governor
        """
        super().__init__(*args, **kwargs)
        setup = ShieldSetup() if shield_setup is None else shield_setup
        setup.update_variables(dt=self.dt, contact_mode=self.contact_mode)
        self.shield = Shield(self.model, self.environment, self.table, self.human_config, self.path, self.limits,
                             setup)

    def reset(self, state: TrajectoryStep) -> None:
        super().reset(state)
        self.shield.reset(state)

    def next_state(self, state: TrajectoryStep, snapshot: HumanSnapshot) -> TrajectoryStep:
        intended = self.controller.intended(state, self.limits.v_max, self.shield.setup.intended_steps)
        following, verdict = self.shield.step(intended, snapshot)
        self.engaged = not verdict.safe
        self.last_verify_time_us = self.shield.last_verify_time_us
        return following


class EnergyShield(_ShieldGovernor):
    """
    Shield with free contact thresholds for unconstrained contacts and clamp thresholds where a clamp is possible.
    """
    method = MethodId.ENERGY_SHIELD
    contact_mode = ContactMode.FULL


class EnergyShieldNoCfree(_ShieldGovernor):
    """
    Shield which checks every contact against the clamp thresholds.
    """
    method = MethodId.ENERGY_SHIELD_NO_CFREE
    contact_mode = ContactMode.CLAMP_ONLY


class DynamicSSM(_ShieldGovernor):
    """
    Dynamic speed and separation monitoring: every possible contact is a violation.
    """
    method = MethodId.DYNAMIC_SSM
    contact_mode = ContactMode.CONTACT_ONLY
