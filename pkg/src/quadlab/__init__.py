"""Executable checks of the morph/recut proof of Brahmagupta's formula."""
