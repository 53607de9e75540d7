"""arnav: deterministic AR museum-robot simulation and survey statistics.

The package is organized bottom-up:

  geometry        scalar vector/triangle/box kernel
  world           chunked triangle scenes with an exact spatial index
  scene           OBJ subset + manifest loading
  discovery       simulated AR meshing with material-dependent detection
  lidar           rotating 2D range scanner over the discovered world
  traversability  Unknown/Free/Blocked ground grid, incremental updates
  planner         deterministic A* with corner-cut rules
  agent           kinematic robot with teleport recovery
  scenario        scenario file loading
  session         fixed-timestep loop, commands, snapshots
  protocol        wire framing and canonical serialization
  server          TCP snapshot streaming
  stats           Likert reversal, t-tests, Mann-Whitney U, understanding
"""

from .geometry import AABB, Triangle, Vec3
from .world import (
    EmptyChunk,
    IngestSummary,
    InvalidDirection,
    Material,
    MeshChunk,
    RayHit,
    WorldModel,
)
from .scene import SceneError, load_manifest, load_obj, load_scene
from .discovery import DiscoveryParams, ObserverPose, step_discovery
from .lidar import LidarFrame, LidarParams, scan
from .traversability import (
    CellState,
    GridSpec,
    RobotFootprint,
    StaleSpec,
    TraversabilityGrid,
    rebuild,
    update_cells,
)
from .planner import (
    Cell,
    GoalNotNavigable,
    NoPath,
    PlannedPath,
    StartNotNavigable,
    plan,
    validate,
)
from .agent import Agent, AgentParams, Mode, Pose2D, RobotState, bfs_nearest_free
from .scenario import Scenario, ScenarioError, load_scenario
from .session import (
    CommandError,
    Session,
    SessionSnapshot,
    VisualizationMode,
    occlusion_mask,
    validate_command,
)
from .protocol import canonical_dumps, encode_message
from . import stats

__version__ = "0.1.0"

__all__ = [
    "AABB", "Triangle", "Vec3",
    "EmptyChunk", "IngestSummary", "InvalidDirection", "Material", "MeshChunk",
    "RayHit", "WorldModel",
    "SceneError", "load_manifest", "load_obj", "load_scene",
    "DiscoveryParams", "ObserverPose", "step_discovery",
    "LidarFrame", "LidarParams", "scan",
    "CellState", "GridSpec", "RobotFootprint", "StaleSpec", "TraversabilityGrid",
    "rebuild", "update_cells",
    "Cell", "GoalNotNavigable", "NoPath", "PlannedPath", "StartNotNavigable",
    "plan", "validate",
    "Agent", "AgentParams", "Mode", "Pose2D", "RobotState", "bfs_nearest_free",
    "Scenario", "ScenarioError", "load_scenario",
    "CommandError", "Session", "SessionSnapshot", "VisualizationMode",
    "occlusion_mask", "validate_command",
    "canonical_dumps", "encode_message",
    "stats",
]
