import pytest


class FakeStore(object):
    def __init__(self):
        self._brain = {}

    def put(self, key, value):
        self._brain[key] = value
        return key

    def get(self, key):
        return self._brain[key]

    def keys(self):
        return sorted(self._brain)


@pytest.fixture
def store():
    return FakeStore()
