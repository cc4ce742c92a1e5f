"""Lightweight operation counters used by the linear-time audits."""

from __future__ import annotations


class Counters:
    __slots__ = ("data",)

    def __init__(self):
        self.data = {}

    def bump(self, key, amount=1):
        self.data[key] = self.data.get(key, 0) + amount

    def peak(self, key, value):
        if value > self.data.get(key, 0):
            self.data[key] = value

    def get(self, key):
        return self.data.get(key, 0)

    def total(self):
        return sum(self.data.values())

    def as_dict(self):
        return dict(self.data)

    def __repr__(self):
        return f"Counters({self.data})"
