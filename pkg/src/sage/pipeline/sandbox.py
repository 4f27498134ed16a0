"""Sandboxed execution of validation tools.

Each tool call runs in a forked child process under a wall-clock timeout,
an address-space cap, and a network block (socket creation is disabled in
the child). Inputs are passed by value; the child's working directory is a
private scratch directory, so tools cannot scribble over run artifacts.
The guards are best-effort process-level containment for cooperative
tools, not a security boundary against hostile code.
"""

from __future__ import annotations

import multiprocessing
import os
import resource
import socket
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Callable, Mapping, Optional, Sequence


@dataclass(frozen=True)
class SandboxLimits:
    timeout_s: float = 20.0
    memory_mb: int = 4096
    allow_network: bool = False

    def __post_init__(self):
        if self.timeout_s <= 0:
            raise ValueError("timeout_s must be positive")
        if self.memory_mb <= 0:
            raise ValueError("memory_mb must be positive")


class SandboxViolation(RuntimeError):
    """A tool broke the sandbox contract (timeout, memory, network, crash)."""

    def __init__(self, kind: str, message: str):
        super().__init__(message)
        self.kind = kind

    def record(self) -> dict:
        return {"kind": self.kind, "message": str(self)}


class ToolError(RuntimeError):
    """The tool itself raised; eligible for plan-revision feedback."""


def _block_network():
    def _denied(*args, **kwargs):
        raise RuntimeError("network access is disabled inside the validation sandbox")

    socket.socket = _denied  # type: ignore[misc]
    socket.create_connection = _denied  # type: ignore[misc]
    socket.getaddrinfo = _denied  # type: ignore[misc]


def _child(conn, fn, args, kwargs, limits: SandboxLimits, scratch: str):
    try:
        os.chdir(scratch)
        cap = limits.memory_mb * 1024 * 1024
        resource.setrlimit(resource.RLIMIT_AS, (cap, cap))
        if not limits.allow_network:
            _block_network()
        result = fn(*args, **kwargs)
        conn.send(("ok", result))
    except MemoryError:
        conn.send(("violation", "memory", f"tool exceeded the {limits.memory_mb} MB memory cap"))
    except RuntimeError as exc:
        if "network access is disabled" in str(exc):
            conn.send(("violation", "network", str(exc)))
        else:
            conn.send(("error", f"{type(exc).__name__}: {exc}"))
    except Exception as exc:
        conn.send(("error", f"{type(exc).__name__}: {exc}"))
    finally:
        conn.close()


def run_sandboxed(
    fn: Callable,
    args: Sequence = (),
    kwargs: Optional[Mapping[str, Any]] = None,
    limits: SandboxLimits = SandboxLimits(),
    scratch: Optional[str] = None,
) -> Any:
    """Run ``fn(*args, **kwargs)`` in a capped child and return its result.

    Raises SandboxViolation for contract breaches and ToolError when the
    tool itself fails.
    """
    ctx = multiprocessing.get_context("fork")
    parent_conn, child_conn = ctx.Pipe(duplex=False)
    scratch_dir = scratch or os.getcwd()
    Path(scratch_dir).mkdir(parents=True, exist_ok=True)
    proc = ctx.Process(
        target=_child, args=(child_conn, fn, tuple(args), dict(kwargs or {}), limits, scratch_dir)
    )
    proc.start()
    child_conn.close()
    try:
        if not parent_conn.poll(limits.timeout_s):
            raise SandboxViolation(
                "timeout", f"tool exceeded the {limits.timeout_s} s wall-clock timeout"
            )
        try:
            message = parent_conn.recv()
        except EOFError:
            raise SandboxViolation("crash", "tool process died before reporting a result")
    finally:
        if proc.is_alive():
            proc.kill()
        proc.join()
        parent_conn.close()

    status = message[0]
    if status == "ok":
        return message[1]
    if status == "violation":
        raise SandboxViolation(message[1], message[2])
    raise ToolError(message[1])
