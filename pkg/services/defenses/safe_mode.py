"""Failsafe reaction to link loss."""

from config.models.core_models import DroneState, FlightStatus, LandingReason

# statuses a lost link can interrupt
_AIRBORNE = (FlightStatus.FLYING, FlightStatus.SUSPENDED, FlightStatus.HIJACKED)


def safe_mode_policy(state: DroneState, link_lost: bool) -> DroneState:
    """
    On link loss an airborne drone starts an emergency landing.

    The landing countdown itself is advanced by the drone state machine, which
    moves Landing to Landed after `land_duration` ticks. Drones without safe mode
    are returned unchanged.
    """
    if not state.safe_mode or not link_lost or state.status not in _AIRBORNE:
        return state
    return state.model_copy(update={
        "status": FlightStatus.LANDING,
        "land_remaining": state.land_duration,
        "landing_reason": LandingReason.SAFE_MODE,
    })
