"""Meminductor device models and series-loop circuit simulation."""

from ._core import (
    CoilCoreParams,
    NetlistError,
    SimulationError,
    analyze_second_order,
    flux_of_charge,
    flux_slope,
    format_netlist,
    integrate_magnetization_sine,
    magnetization_closed_form,
    mh_loop,
    rho_and_L,
    run_cli,
    run_sps,
    simulate_netlist,
)

__all__ = [
    "CoilCoreParams",
    "NetlistError",
    "SimulationError",
    "analyze_second_order",
    "flux_of_charge",
    "flux_slope",
    "format_netlist",
    "integrate_magnetization_sine",
    "magnetization_closed_form",
    "mh_loop",
    "rho_and_L",
    "run_cli",
    "run_sps",
    "simulate_netlist",
]
