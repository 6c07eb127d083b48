# SPDX-License-Identifier: CC-BY-SA-4.0

"""Test suite for relanosov-lab."""
