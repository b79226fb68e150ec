"""
QCG-CVRP - Instance Model and Storage Tests

Test Categories:
1. Generation (determinism, ranges, symmetric distances)
2. Validation of hand-built instances
3. Instance files (schema errors with field paths)

Run with: python -m pytest tests/test_instance.py -v
"""

import json
import os
import sys

sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

import numpy as np
import pytest

from instance import (
    Instance, generate_instance, instance_from_document, instance_to_document,
    load_instance, save_instance,
)
from utils.errors import ParameterError, SchemaError


def _document(**overrides):
    doc = {
        "schema_version": 1,
        "n_locations": 3,
        "capacity": 25,
        "coords": [[0.5, 0.5], [0.1, 0.2], [0.9, 0.7]],
        "demands": [0, 4, 9],
    }
    doc.update(overrides)
    return doc


# =============================================================================
# GENERATION
# =============================================================================

class TestGenerateInstance:
    """Random instances in the unit square with the depot at the centre."""

    def test_same_seed_same_instance(self):
        a = generate_instance(7, 5, 25, 1, 15)
        b = generate_instance(7, 5, 25, 1, 15)
        assert a == b
        assert np.array_equal(a.dist, b.dist)

    def test_different_seed_differs(self):
        assert generate_instance(1, 5, 25, 1, 15) != generate_instance(2, 5, 25, 1, 15)

    def test_ranges(self):
        inst = generate_instance(3, 8, 25, 1, 15)
        assert inst.n_locations == 9
        assert inst.coords[0] == (0.5, 0.5)
        assert inst.demands[0] == 0
        assert all(1 <= w <= 15 for w in inst.demands[1:])
        assert all(0.0 <= x <= 1.0 and 0.0 <= y <= 1.0 for x, y in inst.coords)

    def test_distance_matrix_symmetric_zero_diagonal(self):
        inst = generate_instance(11, 6, 25, 1, 15)
        assert np.array_equal(inst.dist, inst.dist.T)
        assert np.all(np.diag(inst.dist) == 0.0)

    def test_total_demand_may_exceed_capacity(self):
        inst = generate_instance(0, 10, 25, 15, 15)
        assert inst.total_demand == 150
        assert inst.min_vehicles == 6

    def test_single_customer_distance(self):
        inst = Instance(coords=((0.5, 0.5), (0.5, 1.0)), demands=(0, 3), capacity=25)
        assert inst.dist[0, 1] == pytest.approx(0.5)

    @pytest.mark.parametrize("args", [
        (0, 0, 25, 1, 15),
        (0, 5, 25, 0, 15),
        (0, 5, 25, 10, 5),
        (0, 5, 10, 1, 15),
    ])
    def test_bad_arguments(self, args):
        with pytest.raises(ParameterError):
            generate_instance(*args)


# =============================================================================
# DIRECT CONSTRUCTION
# =============================================================================

class TestInstanceValidation:

    def test_hashable_and_equal_by_value(self):
        a = Instance(coords=((0.5, 0.5), (0.1, 0.1)), demands=(0, 2), capacity=5)
        b = Instance(coords=[[0.5, 0.5], [0.1, 0.1]], demands=[0, 2], capacity=5)
        assert a == b
        assert hash(a) == hash(b)

    def test_distances_read_only(self):
        inst = generate_instance(0, 3, 25, 1, 15)
        with pytest.raises(ValueError):
            inst.dist[0, 1] = 5.0

    def test_customers_range(self):
        inst = generate_instance(0, 4, 25, 1, 15)
        assert list(inst.customers) == [1, 2, 3, 4]
        assert inst.n_customers == 4

    @pytest.mark.parametrize("demands", [(1, 2), (0, 0), (0, 30)])
    def test_bad_demands(self, demands):
        with pytest.raises(ParameterError):
            Instance(coords=((0.5, 0.5), (0.2, 0.2)), demands=demands, capacity=25)

    def test_length_mismatch(self):
        with pytest.raises(ParameterError):
            Instance(coords=((0.5, 0.5),), demands=(0, 1), capacity=25)


# =============================================================================
# INSTANCE FILES
# =============================================================================

class TestInstanceStorage:

    def test_save_and_load(self, tmp_path):
        inst = generate_instance(5, 6, 25, 1, 15)
        path = save_instance(inst, tmp_path / "nested" / "inst.json")
        assert path.exists()
        loaded = load_instance(path)
        assert loaded == inst
        assert np.allclose(loaded.dist, inst.dist)

    def test_document_keys(self):
        doc = instance_to_document(generate_instance(0, 2, 25, 1, 15))
        assert set(doc) == {"schema_version", "n_locations", "capacity", "coords", "demands"}
        assert "dist" not in doc

    def test_valid_document(self):
        inst = instance_from_document(_document())
        assert inst.demands == (0, 4, 9)

    def test_unknown_key_rejected(self):
        with pytest.raises(SchemaError):
            instance_from_document(_document(colour="red"))

    def test_demand_above_capacity_names_field(self):
        with pytest.raises(SchemaError) as err:
            instance_from_document(_document(demands=[0, 4, 30]))
        assert err.value.field_path == "demands[2]"

    def test_zero_customer_demand_names_field(self):
        with pytest.raises(SchemaError) as err:
            instance_from_document(_document(demands=[0, 0, 9]))
        assert err.value.field_path == "demands[1]"

    def test_coordinate_out_of_square(self):
        with pytest.raises(SchemaError) as err:
            instance_from_document(_document(coords=[[0.5, 0.5], [0.1, 1.2], [0.9, 0.7]]))
        assert err.value.field_path == "coords[1][1]"

    def test_wrong_length(self):
        with pytest.raises(SchemaError) as err:
            instance_from_document(_document(demands=[0, 4]))
        assert err.value.field_path == "demands"

    def test_bad_capacity_type(self):
        with pytest.raises(SchemaError) as err:
            instance_from_document(_document(capacity="lots"))
        assert err.value.field_path == "capacity"

    @pytest.mark.parametrize("override,field_path", [
        ({"coords": [[0.5, 0.5], ["0.1", 0.2], [0.9, 0.7]]}, "coords[1][0]"),
        ({"coords": [[0.5, 0.5], [0.1, True], [0.9, 0.7]]}, "coords[1][1]"),
        ({"demands": [0, "4", 9]}, "demands[1]"),
        ({"demands": [0, 4, True]}, "demands[2]"),
        ({"capacity": 25.0}, "capacity"),
    ])
    def test_strings_and_booleans_rejected(self, override, field_path):
        with pytest.raises(SchemaError) as err:
            instance_from_document(_document(**override))
        assert err.value.field_path == field_path

    def test_integer_coordinates_accepted(self):
        inst = instance_from_document(_document(coords=[[0.5, 0.5], [0, 1], [0.9, 0.7]]))
        assert inst.coords[1] == (0.0, 1.0)

    def test_schema_version(self):
        with pytest.raises(SchemaError):
            instance_from_document(_document(schema_version=99))

    def test_invalid_json(self, tmp_path):
        path = tmp_path / "broken.json"
        path.write_text("{not json")
        with pytest.raises(SchemaError):
            load_instance(path)

    def test_missing_file(self, tmp_path):
        with pytest.raises(FileNotFoundError):
            load_instance(tmp_path / "missing.json")

    def test_saved_file_is_plain_json(self, tmp_path):
        path = save_instance(generate_instance(1, 3, 25, 1, 15), tmp_path / "i.json")
        assert json.loads(path.read_text())["n_locations"] == 4
