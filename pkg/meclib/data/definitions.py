"""
Constants and enumerations shared by the meclib data model, the solvers
and the file formats.
"""

from enum import IntEnum


class Location(IntEnum):
    """
    Placement tier of a subtask. The integer codes are the ones stored in
    dataset labels and in the network output groups.
    """
    DEVICE = 0
    EDGE = 1
    CLOUD = 2

    def __str__(self):
        return self.name.capitalize()


# Number of classes in every network output group (one per Location)
nof_locations_c = len(Location)

# Resampling floors for the compute rates (Hz) and the bandwidths (B/s)
rate_floor_c = 1e6
bandwidth_floor_c = 1e4

# The exhaustive oracle refuses larger instances (3**12 = 531441 candidates)
max_exhaustive_subtasks_c = 12

# Probabilities are clamped below at this value before taking a logarithm
probability_floor_c = 1e-12

# Every probability triple of a soft label sums to one within this tolerance
target_sum_tolerance_c = 1e-9

default_temperature_c = 5.0

# File schemas
dataset_schema_c = "meclib.dataset"
dataset_version_c = 1
model_schema_c = "meclib.model"
model_version_c = 1

report_columns_c = ("name", "mean_latency_s", "normalized_latency",
                    "per_label_accuracy", "exact_match",
                    "mean_inference_delay_s", "delay_normalized_to_greedy")

# Keys of a single dataset record, in the order they are written
sample_keys_c = ("eps_cycles", "data_bytes", "p1_hz", "p2_hz", "b1_bps", "b2_bps")
