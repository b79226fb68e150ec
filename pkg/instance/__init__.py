"""QCG-CVRP - Instance Package"""

from .models import Instance, generate_instance, euclidean_distances
from .storage import (
    InstanceDocument, instance_to_document, instance_from_document,
    load_instance, save_instance,
)

__all__ = [
    "Instance", "generate_instance", "euclidean_distances",
    "InstanceDocument", "instance_to_document", "instance_from_document",
    "load_instance", "save_instance",
]
