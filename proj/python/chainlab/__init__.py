"""Simulated blockchain lab: blind-signature voting and sealed-bid auctions."""

from ._chainlab import (
    HarnessError,
    bat_children,
    bat_depth,
    blind,
    od_check,
    rsa_keypair,
    rsa_sign,
    rsa_verify,
    run_scenario,
    sha256,
    sweep,
    unblind,
    validate_scenario,
)

__all__ = [
    "HarnessError",
    "bat_children",
    "bat_depth",
    "blind",
    "od_check",
    "rsa_keypair",
    "rsa_sign",
    "rsa_verify",
    "run_scenario",
    "sha256",
    "sweep",
    "unblind",
    "validate_scenario",
]
