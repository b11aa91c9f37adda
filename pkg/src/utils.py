import copy
import json
import logging
import os
import sys

import yaml

DEFAULT_CONFIG = {
    'verification': {
        'window': 8,
        'seed': 0,
        'word_budget': 10000,
        'word_length': 6,
        'samples': 2000,
        'exhaustive_limit': 10000,
    },
    'enumeration': {
        'ideal_budget': 10000,
        'probe_budget': 200000,
        'max_probe_size': 8,
    },
    'coextensivity': {
        'probes': ['trivial', 'boolean(1,inf)', 'boolean(2,inf)', 'luk(3)'],
    },
    'outputs': {
        'reports': 'reports',
    },
    'logging': {
        'level': 'WARNING',
        'format': '%(asctime)s - %(name)s - %(levelname)s - %(message)s',
        'file': None,
    },
}


def setup_logging(log_level='INFO', log_file=None, log_format=None):
    """Setup logging configuration; console output goes to stderr"""
    handlers = [logging.StreamHandler(sys.stderr)]
    if log_file:
        directory = os.path.dirname(log_file)
        if directory:
            os.makedirs(directory, exist_ok=True)
        handlers.append(logging.FileHandler(log_file))

    logging.basicConfig(
        level=getattr(logging, str(log_level).upper()),
        format=log_format or DEFAULT_CONFIG['logging']['format'],
        handlers=handlers,
        force=True,
    )

    logger = logging.getLogger(__name__)
    logger.info(f"Logging initialized. Level: {log_level}, File: {log_file}")
    return logger


def load_config(config_path='config/config.yaml'):
    """Load configuration from YAML file"""
    try:
        with open(config_path, 'r') as file:
            config = yaml.safe_load(file)
        logging.info(f"Configuration loaded from {config_path}")
        return config
    except FileNotFoundError:
        logging.error(f"Configuration file not found: {config_path}")
        return None
    except Exception as e:
        logging.error(f"Error loading config from {config_path}: {e}")
        return None


def merge_config(overrides=None, base=None):
    """Overlay a (possibly partial) config on the defaults, section by section"""
    merged = copy.deepcopy(base or DEFAULT_CONFIG)
    for section, values in (overrides or {}).items():
        if isinstance(values, dict) and isinstance(merged.get(section), dict):
            merged[section].update(values)
        else:
            merged[section] = values
    return merged


def get_config(config_path='config/config.yaml'):
    """Defaults with the YAML file on top, when it can be read"""
    loaded = load_config(config_path) if config_path and os.path.exists(config_path) else None
    return merge_config(loaded)


def save_json(data, file_path, indent=2):
    """Save data to JSON file"""
    try:
        directory = os.path.dirname(file_path)
        if directory:
            os.makedirs(directory, exist_ok=True)
        with open(file_path, 'w') as f:
            json.dump(data, f, indent=indent, default=str)
        logging.info(f"JSON data saved: {file_path}")
        return True
    except Exception as e:
        logging.error(f"Error saving JSON to {file_path}: {e}")
        return False


def print_section_header(title):
    """Print a formatted section header"""
    print(f"\n{'-'*60}")
    print(f"📋 {title}")
    print(f"{'-'*60}")


def print_step(step_number, step_name):
    """Print step information"""
    print(f"\n🔹 STEP {step_number}: {step_name}")
    print(f"{'-'*40}")


def print_success(message):
    print(f"✅ {message}")


def print_error(message):
    print(f"❌ {message}")


def print_warning(message):
    print(f"⚠️  {message}")


def print_info(message):
    print(f"ℹ️  {message}")
