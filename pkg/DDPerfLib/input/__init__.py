from .input_data_checker import CheckExperimentConfig, PROTOCOLS, FORMATS, VIEWS
from .input_data_processor import ExperimentConfig, ExperimentConfigProcessor, read_config_file, parse_partitions
