"""
Dataset files.

A dataset is stored as JSON lines: a header object with the schema name and
version, the distribution spec and the seed, followed by one object per
sample. Hard datasets carry a "label" (integer location codes), soft
datasets a "soft_label" (one probability triple per subtask). Floats are
written with their shortest round-trip representation, so values reload
exactly.
"""

import json

import numpy as np

from meclib.data.containers.dataset import Dataset, DistributionSpec, LabeledSample, SoftDataset, \
    check_soft_labels
from meclib.data.containers.requirement import Environment, Requirement, TaskProfile
from meclib.data.definitions import dataset_schema_c, dataset_version_c, nof_locations_c, \
    sample_keys_c
from meclib.utils.generic import atomic_write


class DatasetFormatError(ValueError):
    def __init__(self, path, line, message):
        self.path = path
        self.line = line
        super(DatasetFormatError, self).__init__(
            "%s, line %s: %s" % (path, line, message) if line else "%s: %s" % (path, message))


# region Writing

def _requirement_record(req):
    env = req.env
    return {"eps_cycles": list(req.task.eps),
            "data_bytes": list(req.task.data),
            "p1_hz": env.p1,
            "p2_hz": env.p2,
            "b1_bps": env.b1,
            "b2_bps": env.b2}


def _header(kind, spec, seed, count, **extra):
    header = {"schema": dataset_schema_c,
              "version": dataset_version_c,
              "kind": kind,
              "spec": spec.to_dict(),
              "seed": seed,
              "num_samples": count}
    header.update(extra)
    return header


def save_dataset(ds, path):
    """
    Write a Dataset or a SoftDataset. The file is written to a temporary
    name first and renamed, so readers never see a partial file.

    :param ds:   a Dataset or SoftDataset
    :param path: output file path (.jsonl)
    """
    if isinstance(ds, Dataset):
        header = _header("hard", ds.spec, ds.seed, len(ds))
        records = []
        for sample in ds:
            record = _requirement_record(sample.req)
            record["label"] = sample.label.codes()
            records.append(record)
    elif isinstance(ds, SoftDataset):
        header = _header("soft", ds.spec, ds.seed, len(ds), temperature=ds.temperature)
        records = []
        for req, soft in zip(ds.reqs, ds.soft_labels):
            record = _requirement_record(req)
            record["soft_label"] = soft.tolist()
            records.append(record)
    else:
        raise TypeError("Not a dataset: %r" % type(ds))

    with atomic_write(path) as f:
        f.write(json.dumps(header, allow_nan=False) + "\n")
        for record in records:
            f.write(json.dumps(record, allow_nan=False) + "\n")

# endregion

# region Reading


def _parse_header(path, line):
    try:
        header = json.loads(line)
    except ValueError as e:
        raise DatasetFormatError(path, 1, "header is not valid JSON (%s)" % e)
    if not isinstance(header, dict) or header.get("schema") != dataset_schema_c:
        raise DatasetFormatError(path, 1, "not a meclib dataset header")
    if header.get("version") != dataset_version_c:
        raise DatasetFormatError(path, 1, "unsupported schema version %r (expected %i)" %
                                 (header.get("version"), dataset_version_c))
    if header.get("kind") not in ("hard", "soft"):
        raise DatasetFormatError(path, 1, "unknown dataset kind %r" % header.get("kind"))
    try:
        header["spec"] = DistributionSpec.from_dict(header.get("spec") or {})
    except ValueError as e:
        raise DatasetFormatError(path, 1, str(e))
    return header


def _parse_requirement(record, spec):
    missing = [key for key in sample_keys_c if key not in record]
    if missing:
        raise ValueError("missing key(s) %s" % ", ".join(missing))
    if len(record["eps_cycles"]) != spec.num_subtasks:
        raise ValueError("%i cycle counts, expected %i" %
                         (len(record["eps_cycles"]), spec.num_subtasks))
    task = TaskProfile(record["eps_cycles"], record["data_bytes"])
    env = Environment(record["p1_hz"], record["p2_hz"], record["b1_bps"], record["b2_bps"])
    return Requirement(task, env)


def _parse_soft_label(value, spec):
    soft = np.asarray(value, dtype=np.float64)
    if soft.shape != (spec.num_subtasks, nof_locations_c):
        raise ValueError("soft label should have shape %s, got %s" %
                         ((spec.num_subtasks, nof_locations_c), soft.shape))
    check_soft_labels(soft)
    return soft


def load_dataset(path):
    """
    Read a dataset file written by save_dataset.

    :param path: the file path
    :return:     a Dataset or a SoftDataset, depending on the file kind
    """
    with open(path, "r") as f:
        lines = f.read().splitlines()

    if not lines or not lines[0].strip():
        raise DatasetFormatError(path, None, "empty dataset file (no header record)")

    header = _parse_header(path, lines[0])
    spec = header["spec"]
    soft = header["kind"] == "soft"

    reqs, labels = [], []
    for lineno, line in enumerate(lines[1:], start=2):
        if not line.strip():
            continue
        try:
            record = json.loads(line)
            if not isinstance(record, dict):
                raise ValueError("record is not an object")
            req = _parse_requirement(record, spec)
            if soft:
                label = _parse_soft_label(record["soft_label"], spec)
            else:
                label = record["label"]
                if len(label) != spec.num_subtasks:
                    raise ValueError("label has %i entries, expected %i" %
                                     (len(label), spec.num_subtasks))
                label = LabeledSample(req, label).label
        except (ValueError, KeyError, TypeError) as e:
            raise DatasetFormatError(path, lineno, "malformed record: %s" % e)
        reqs.append(req)
        labels.append(label)

    count = header.get("num_samples")
    if count is not None and count != len(reqs):
        raise DatasetFormatError(path, None, "header announces %i samples, found %i" %
                                 (count, len(reqs)))

    if soft:
        shape = (len(reqs), spec.num_subtasks, nof_locations_c)
        soft_labels = np.array(labels, dtype=np.float64).reshape(shape)
        return SoftDataset(spec, reqs, soft_labels, header.get("seed"), header.get("temperature"))

    samples = [LabeledSample(req, label) for req, label in zip(reqs, labels)]
    return Dataset(spec, samples, header.get("seed"))


def load_requirements(path):
    """
    The requirements of a dataset file, whatever its kind.
    """
    ds = load_dataset(path)
    if isinstance(ds, SoftDataset):
        return ds.spec, ds.reqs
    return ds.spec, ds.requirements

# endregion


def load_distribution_spec(path):
    """
    Read a DistributionSpec from a JSON file holding the dictionary of
    DistributionSpec.to_dict, e.g. {"num_subtasks": 6, "eps_range": [0, 2e9], ...}.
    """
    with open(path, "r") as f:
        try:
            document = json.load(f)
        except ValueError as e:
            raise DatasetFormatError(path, None, "not valid JSON (%s)" % e)
    if not isinstance(document, dict):
        raise DatasetFormatError(path, None, "not a distribution spec")
    try:
        return DistributionSpec.from_dict(document)
    except ValueError as e:
        raise DatasetFormatError(path, None, str(e))
