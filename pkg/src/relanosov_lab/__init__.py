# SPDX-License-Identifier: CC-BY-SA-4.0

"""Numerical certification toolkit for relatively Anosov representations."""

__version__ = "0.1.0"
