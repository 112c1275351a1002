"""Scene-file ingestion and persistence.

A scene is one JSON document holding the chain, the object (a builder
spec: cuboid, tensor rig, or raw inertia), grasp candidates, the
trajectory endpoints, the collision setup, and the IK seed. Units are
explicit in field names (mass_kg, length_m, ypr_rad). Grasp poses are
given in the object frame; the parser re-expresses them relative to the
object's CoM frame. A grasp entry may override the tensor rig's ring
positions, which rebuilds the object for that grasp (same physical grip,
different mass distribution).
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass

import numpy as np

from .bodies import (GraspCandidate, RigidBodyInertia, TensorObjectConfig,
                     build_cuboid, build_tensor_object)
from .chain import ChainModel, JointSpec, JointState, LinkInertia
from .errors import GraspmassError, ParseError, ValidationError
from .spatial import Pose, pose_compose, pose_inverse
from .trajectory import QuinticTrajectory, fit_quintic

SCHEMA_VERSION = 1


@dataclass(frozen=True, eq=False)
class Scene:
    """Validated scene plus the declarative dict it came from."""

    name: str
    chain: ChainModel
    object: RigidBodyInertia
    grasps: tuple[GraspCandidate, ...]
    bodies: tuple[RigidBodyInertia, ...]  # per grasp, aligned with grasps
    start: Pose
    end: Pose
    t_f: float
    dt: float
    collision_sample: int
    stiffness: float
    damping: float
    ik_seed: JointState
    spec: dict
    digest: str

    def fit(self) -> QuinticTrajectory:
        return fit_quintic(self.start, self.end, self.t_f)

    @property
    def n_samples(self) -> int:
        return max(1, round(self.t_f / self.dt))


def _get(d, key, path, kind=None):
    if not isinstance(d, dict) or key not in d:
        raise ValidationError(f"{path}.{key}" if path else key, "missing field")
    value = d[key]
    if kind is not None and not isinstance(value, kind):
        raise ValidationError(f"{path}.{key}" if path else key,
                              f"expected {getattr(kind, '__name__', kind)}")
    return value


def _vector(d, key, path, length):
    try:
        v = np.asarray(_get(d, key, path), dtype=float)
    except (TypeError, ValueError) as exc:
        raise ValidationError(f"{path}.{key}" if path else key,
                              f"expected {length} numbers") from exc
    if v.shape != (length,):
        raise ValidationError(f"{path}.{key}" if path else key,
                              f"expected {length} numbers")
    return v


def _pose(d, key, path) -> Pose:
    sub = _get(d, key, path)
    sub_path = f"{path}.{key}" if path else key
    pos = _vector(sub, "position_m", sub_path, 3)
    ypr = _vector(sub, "ypr_rad", sub_path, 3)
    return Pose.from_ypr(pos, ypr)


def _wrap(path, fn, *args):
    """Run a constructor, converting library errors to field-level ones."""
    try:
        return fn(*args)
    except ValidationError:
        raise
    except (GraspmassError, ValueError, TypeError) as exc:
        raise ValidationError(path, str(exc)) from exc


def _parse_chain(d, path="chain") -> ChainModel:
    base = _pose(d, "base_pose", path)
    tool = _pose(d, "tool_transform", path)
    joints = []
    entries = _get(d, "joints", path, list)
    if not entries:
        raise ValidationError(f"{path}.joints", "chain needs at least one joint")
    for k, entry in enumerate(entries):
        jp = f"{path}.joints[{k}]"
        origin = _pose(entry, "origin", jp)
        axis = _vector(entry, "axis", jp, 3)
        limits = _vector(entry, "limits_rad", jp, 2)
        spec = _wrap(jp, JointSpec, origin, axis, (limits[0], limits[1]))
        link_d = _get(entry, "link", jp)
        link = _wrap(f"{jp}.link", LinkInertia,
                     _get(link_d, "mass_kg", f"{jp}.link"),
                     _vector(link_d, "com_m", f"{jp}.link", 3),
                     np.asarray(_get(link_d, "inertia_kgm2", f"{jp}.link"),
                                dtype=float))
        joints.append((spec, link))
    return _wrap(path, ChainModel, tuple(joints), base, tool)


def _build_object(d, path="object") -> RigidBodyInertia:
    kind = _get(d, "type", path, str)
    if kind == "cuboid":
        return _wrap(path, build_cuboid, _get(d, "mass_kg", path),
                     _vector(d, "dims_m", path, 3))
    if kind == "tensor":
        cfg = _tensor_config(d, path)
        return _wrap(path, build_tensor_object, cfg)
    if kind == "inertia":
        com_pose = _pose(d, "com_pose", path)
        return _wrap(path, RigidBodyInertia, _get(d, "mass_kg", path), com_pose,
                     np.asarray(_get(d, "inertia_kgm2", path), dtype=float))
    raise ValidationError(f"{path}.type", f"unknown object type {kind!r}")


def _tensor_config(d, path, ring_positions=None) -> TensorObjectConfig:
    if ring_positions is None:
        ring_positions = _vector(d, "ring_positions_m", path, 5)
    kwargs = {}
    if "cylinder_radius_m" in d:
        kwargs["cylinder_radius"] = float(d["cylinder_radius_m"])
    if "ring_radius_m" in d:
        kwargs["ring_radius"] = float(d["ring_radius_m"])
    return _wrap(path, lambda: TensorObjectConfig(
        handle_length=float(_get(d, "handle_length_m", path)),
        cylinder_length=float(_get(d, "cylinder_length_m", path)),
        cylinder_mass=float(_get(d, "cylinder_mass_kg", path)),
        ring_mass=float(_get(d, "ring_mass_kg", path)),
        ring_positions=ring_positions, **kwargs))


def _parse_grasps(d, obj_spec, base_object, path="grasps"):
    entries = _get(d, "grasps", "", list)
    if not entries:
        raise ValidationError(path, "at least one grasp required")
    grasps, bodies, ids = [], [], set()
    for k, entry in enumerate(entries):
        gp = f"{path}[{k}]"
        gid = str(_get(entry, "id", gp))
        if gid in ids:
            raise ValidationError(f"{gp}.id", f"duplicate grasp id {gid!r}")
        ids.add(gid)
        body = base_object
        if "ring_positions_m" in entry:
            if obj_spec.get("type") != "tensor":
                raise ValidationError(f"{gp}.ring_positions_m",
                                      "ring override needs a tensor object")
            cfg = _tensor_config(obj_spec, gp,
                                 _vector(entry, "ring_positions_m", gp, 5))
            body = _wrap(gp, build_tensor_object, cfg)
        pose_obj = _pose(entry, "pose_obj", gp)
        # grasp pose is stored object-frame; candidates are CoM-relative
        grasp_pose = pose_compose(pose_inverse(body.com_pose), pose_obj)
        grasps.append(_wrap(gp, GraspCandidate, gid, grasp_pose))
        bodies.append(body)
    return tuple(grasps), tuple(bodies)


def scene_from_dict(d: dict, digest: str | None = None) -> Scene:
    """Validate a scene dict into a Scene; field paths on every failure."""
    if not isinstance(d, dict):
        raise ParseError("scene document must be a JSON object")
    version = d.get("schema_version", SCHEMA_VERSION)
    if version != SCHEMA_VERSION:
        raise ValidationError("schema_version", f"unsupported version {version}")
    name = str(d.get("name", "scene"))
    chain = _parse_chain(_get(d, "chain", "", dict))
    obj_spec = _get(d, "object", "", dict)
    base_object = _build_object(obj_spec)
    grasps, bodies = _parse_grasps(d, obj_spec, base_object)
    traj = _get(d, "trajectory", "", dict)
    start = _pose(traj, "start", "trajectory")
    end = _pose(traj, "end", "trajectory")
    t_f = float(_get(traj, "t_f_s", "trajectory"))
    dt = float(_get(traj, "dt_s", "trajectory"))
    if not t_f > 0.0:
        raise ValidationError("trajectory.t_f_s", "must be positive")
    if not 0.0 < dt <= t_f:
        raise ValidationError("trajectory.dt_s", "must lie in (0, t_f]")
    n = max(1, round(t_f / dt))
    coll = _get(d, "collision", "", dict)
    stiffness = float(coll.get("stiffness_n_per_m", 1e4))
    damping = float(coll.get("damping_ns_per_m", 0.0))
    if not stiffness > 0.0:
        raise ValidationError("collision.stiffness_n_per_m", "must be positive")
    if damping < 0.0:
        raise ValidationError("collision.damping_ns_per_m", "must be >= 0")
    if "sample" in coll:
        sample_idx = int(coll["sample"])
    elif "time_s" in coll:
        time_s = float(coll["time_s"])
        if not 0.0 < time_s <= t_f:
            raise ValidationError("collision.time_s", "must lie in (0, t_f]")
        sample_idx = max(1, round(time_s / (t_f / n)))
    else:
        raise ValidationError("collision", "needs 'sample' or 'time_s'")
    if not 1 <= sample_idx <= n:
        raise ValidationError("collision.sample", f"must lie in 1..{n}")
    seed = _vector(d, "ik_seed_rad", "", chain.dof)
    ik_seed = _wrap("ik_seed_rad", JointState, seed)
    if digest is None:
        digest = hashlib.sha256(
            json.dumps(d, sort_keys=True).encode()).hexdigest()
    return Scene(name=name, chain=chain, object=base_object, grasps=grasps,
                 bodies=bodies, start=start, end=end, t_f=t_f, dt=dt,
                 collision_sample=sample_idx, stiffness=stiffness,
                 damping=damping, ik_seed=ik_seed, spec=d, digest=digest)


def parse_scene(path) -> Scene:
    """Load and validate a scene file; the digest hashes the file bytes."""
    try:
        with open(path, "rb") as fh:
            raw = fh.read()
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc}") from exc
    try:
        d = json.loads(raw.decode("utf-8"))
    except (UnicodeDecodeError, json.JSONDecodeError) as exc:
        raise ParseError(f"{path}: {exc}") from exc
    return scene_from_dict(d, digest=hashlib.sha256(raw).hexdigest())


def write_scene(scene: Scene, path) -> None:
    """Persist the declarative form; parse(write(scene)) reproduces it."""
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(scene.spec, fh, indent=2)
        fh.write("\n")
