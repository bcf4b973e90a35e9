# -*- coding: utf-8 -*-

from .base import TrainedModel
from .base import FeatureSchema
from .base import argmax_with_prior
from .base import vote_counts
from .tree import Split
from .tree import TreeStructure
from .tree import TreeModel
from .tree import best_split
from .tree import train_cart
from .tree import train_random_tree
from .forest import ForestModel
from .forest import train_random_forest
from .instance_based import KnnModel
from .instance_based import KStarModel
from .instance_based import train_knn
from .instance_based import train_kstar
from .api import train
from .api import predict
