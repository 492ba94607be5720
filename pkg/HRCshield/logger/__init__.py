from .shield_logger import shield_logger
