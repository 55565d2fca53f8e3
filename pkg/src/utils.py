import json
import logging
import os
from multiprocessing import cpu_count
from os.path import exists, join
from typing import Any, Dict, List, cast

from omegaconf import DictConfig, OmegaConf

VERSION = "0.1.0"

LOG_FORMAT = "%(asctime)s %(levelname)s %(name)s: %(message)s"


def load_config(config_path: str) -> DictConfig:
    if not exists(config_path):
        raise ValueError(f"Can't find config in: {config_path}")
    return cast(DictConfig, OmegaConf.load(config_path))


def configure_logging(level: str = "WARNING"):
    logging.basicConfig(level=getattr(logging, level.upper(), logging.WARNING), format=LOG_FORMAT)


def resolve_workers(num_workers: int) -> int:
    """-1 means one worker per CPU."""
    return cpu_count() if num_workers == -1 else max(1, num_workers)


def dump_index(entries: List[Dict[str, Any]], out_root_path: str, name: str):
    """Write the fixture index ``<name>.json`` next to the fixtures."""
    if not exists(out_root_path):
        os.makedirs(out_root_path)
    with open(join(out_root_path, f"{name}.json"), "w") as f:
        json.dump(entries, f, indent=1)


def load_index(out_root_path: str, name: str) -> List[Dict[str, Any]]:
    path = join(out_root_path, f"{name}.json")
    if not exists(path):
        raise ValueError(f"Can't find fixture index in: {path}")
    with open(path, "r") as f:
        return json.load(f)
