from .exact import Pt2, Pt3, Line2, Plane3, validate_general_position
from .dual import ColoredPointSet, center_region_2d, depth_2d, tukey_median_2d
from .colorful2d import colorful_center_region_2d, colorful_median_2d, hull_of_colorful_level
from .center3d import center_region_3d, colorful_center_region_3d, tukey_median_3d
from .oracle import depth_oracle, colorful_depth_oracle, region_oracle
from .config import RunConfig
from .runner import RegionRunner
