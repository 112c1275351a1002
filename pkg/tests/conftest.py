"""Shared oracle helpers.

Everything here is deliberately written from scratch against textbook
formulas so the tests cross-check the library instead of re-running it.
"""

import numpy as np

from graspmass import (
    ChainModel,
    GraspCandidate,
    JointSpec,
    LinkInertia,
    Pose,
    RigidBodyInertia,
    parse_scene,
    rotation_axis_angle,
    rotation_log,
)
from graspmass.cli import demo_scene_path


def random_rotation(rng):
    axis = rng.normal(size=3)
    axis /= np.linalg.norm(axis)
    return rotation_axis_angle(axis, rng.uniform(-np.pi, np.pi))


def cloud_inertia(rng, n=12, spread=0.3):
    """CoM inertia of a random point cloud; PD and physically realizable."""
    pts = rng.normal(scale=spread, size=(n, 3))
    masses = rng.uniform(0.05, 1.0, size=n)
    com = masses @ pts / masses.sum()
    d = pts - com
    eye = np.eye(3)
    inertia = sum(m * ((d_ @ d_) * eye - np.outer(d_, d_))
                  for m, d_ in zip(masses, d))
    return masses.sum(), inertia


def random_body(rng):
    mass, inertia = cloud_inertia(rng)
    return RigidBodyInertia(mass, Pose.identity(), inertia)


def random_grasp(rng, reach=0.4):
    pose = Pose(rng.uniform(-reach, reach, size=3), random_rotation(rng))
    return GraspCandidate("g", pose)


def impulse_oracle_mass(body, grasp, v):
    """Free-body effective mass from a unit impulse at the grasp point.

    Apply impulse v at the grasp point of a floating rigid body and
    measure the velocity change of that point along v; the effective
    mass is the reciprocal.  Pure Newton/Euler, no 6x6 machinery.
    """
    rot = grasp.grasp_pose.rotation
    r = rot.T @ grasp.grasp_pose.position       # CoM -> grasp, grasp axes
    inertia_g = rot.T @ body.inertia @ rot
    dv_com = v / body.mass
    domega = np.linalg.solve(inertia_g, np.cross(r, v))
    dv_grasp = dv_com + np.cross(domega, r)
    return 1.0 / float(v @ dv_grasp)


def random_chain(rng, dof):
    """Random serial chain with point-cloud link inertias."""
    joints = []
    for _ in range(dof):
        axis = rng.normal(size=3)
        axis /= np.linalg.norm(axis)
        offset = rng.uniform(-0.3, 0.3, size=3)
        mass, inertia = cloud_inertia(rng, spread=0.15)
        com = rng.uniform(-0.15, 0.15, size=3)
        joints.append((JointSpec(Pose(offset, np.eye(3)), axis),
                       LinkInertia(mass, com, inertia)))
    tool = Pose(rng.uniform(-0.1, 0.1, size=3), np.eye(3))
    return ChainModel(tuple(joints), Pose.identity(), tool)


def naive_frames(model, q):
    """Joint frames by plain pose chaining; test-local FK."""
    frames = []
    pose = model.base_pose
    for (spec, _), angle in zip(model.joints, q):
        pose = Pose(pose.position + pose.rotation @ spec.parent_transform.position,
                    pose.rotation @ spec.parent_transform.rotation
                    @ rotation_axis_angle(spec.axis, angle))
        frames.append(pose)
    return frames


def naive_ee_pose(model, q):
    last = naive_frames(model, q)[-1]
    return Pose(last.position + last.rotation @ model.tool_transform.position,
                last.rotation @ model.tool_transform.rotation)


def fd_jacobian(model, q, h=1e-6):
    """Geometric Jacobian by central differences on the test-local FK."""
    q = np.asarray(q, dtype=float)
    cols = []
    for j in range(len(q)):
        dq = np.zeros_like(q)
        dq[j] = h
        hi = naive_ee_pose(model, q + dq)
        lo = naive_ee_pose(model, q - dq)
        dpos = (hi.position - lo.position) / (2.0 * h)
        drot = rotation_log(hi.rotation @ lo.rotation.T) / (2.0 * h)
        cols.append(np.concatenate([dpos, drot]))
    return np.column_stack(cols)


def link_energy(model, q, qdot):
    """Total kinetic energy from per-link rigid-body terms.

    Link twists are accumulated joint by joint (omega from the axes,
    CoM velocity from the lever arms), independent of the CRBA.
    """
    frames = naive_frames(model, q)
    energy = 0.0
    for i, (spec_link, frame) in enumerate(zip(model.joints, frames)):
        _, link = spec_link
        com_w = frame.position + frame.rotation @ link.com
        omega = np.zeros(3)
        v_com = np.zeros(3)
        pose = model.base_pose
        for j in range(i + 1):
            spec_j = model.joints[j][0]
            pose = Pose(pose.position + pose.rotation @ spec_j.parent_transform.position,
                        pose.rotation @ spec_j.parent_transform.rotation
                        @ rotation_axis_angle(spec_j.axis, q[j]))
            z = pose.rotation @ spec_j.axis
            omega += qdot[j] * z
            v_com += qdot[j] * np.cross(z, com_w - pose.position)
        inertia_w = frame.rotation @ link.inertia @ frame.rotation.T
        energy += 0.5 * link.mass * (v_com @ v_com)
        energy += 0.5 * (omega @ inertia_w @ omega)
    return energy


def book_scene():
    return parse_scene(demo_scene_path("book"))


def tensor_scene():
    return parse_scene(demo_scene_path("tensor"))
