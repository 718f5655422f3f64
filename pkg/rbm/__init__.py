"""Zaokrąglanie relaksacji LP dla problemu bufora przestawiającego (reordering buffer)."""

__version__ = "0.1.0"
