import json

import pytest

from funnelgroup import SchottkyConfig, build_group


@pytest.fixture
def rank1_group():
    return build_group(SchottkyConfig.from_pairs([(2, 8)]))


@pytest.fixture
def worked_group():
    return build_group(SchottkyConfig.from_pairs([(2, 8), (10, 12)]))


@pytest.fixture
def worked_config_file(tmp_path):
    path = tmp_path / "worked.json"
    path.write_text(json.dumps({"rank": 2, "intervals": [[2, 8], [10, 12]]}))
    return str(path)


@pytest.fixture
def rank1_config_file(tmp_path):
    path = tmp_path / "rank1.json"
    path.write_text(json.dumps({"rank": 1, "intervals": [[2, 8]]}))
    return str(path)


@pytest.fixture
def gamma2_file(tmp_path):
    path = tmp_path / "gamma2.json"
    path.write_text(json.dumps({"generators": [[1, 2, 0, 1], [1, 0, 2, 1]]}))
    return str(path)
