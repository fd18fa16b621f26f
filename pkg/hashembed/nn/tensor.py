"""Dense tensor with reverse-mode differentiation.

Every operation records its parents and a closure that pushes the output
gradient back to them; :meth:`Tensor.backward` runs the closures in
reverse topological order.
"""

from typing import Callable, Iterable, List, Optional, Tuple

import numpy as np

from hashembed.core.exceptions import ContractError, ShapeError


def _unbroadcast(grad: np.ndarray, shape: Tuple[int, ...]) -> np.ndarray:
    """Sum ``grad`` down to ``shape`` after numpy broadcasting."""
    while grad.ndim > len(shape):
        grad = grad.sum(axis=0)
    for axis, size in enumerate(shape):
        if size == 1 and grad.shape[axis] != 1:
            grad = grad.sum(axis=axis, keepdims=True)
    return grad


class Tensor:
    """Row-major array with an optional gradient slot."""

    def __init__(
        self,
        data,
        requires_grad: bool = False,
        dtype=None,
        _parents: Iterable["Tensor"] = (),
        _op: str = "",
    ):
        array = np.asarray(data, dtype=dtype)
        if not np.issubdtype(array.dtype, np.floating):
            array = array.astype(np.float64)
        self.data: np.ndarray = array
        self.grad: Optional[np.ndarray] = None
        self.requires_grad = requires_grad
        self._parents: Tuple["Tensor", ...] = tuple(_parents)
        self._backward: Optional[Callable[[], None]] = None
        self._op = _op

    def __repr__(self) -> str:
        return f"Tensor(shape={self.shape}, op={self._op or 'leaf'}, requires_grad={self.requires_grad})"

    @property
    def shape(self) -> Tuple[int, ...]:
        return self.data.shape

    @property
    def dtype(self):
        return self.data.dtype

    def numpy(self) -> np.ndarray:
        """The underlying array (not a copy)."""
        return self.data

    def item(self) -> float:
        """Value of a one-element tensor."""
        return float(self.data.reshape(-1)[0])

    @staticmethod
    def result(data: np.ndarray, parents: Iterable["Tensor"], op: str) -> "Tensor":
        """Create the output of an operation over ``parents``."""
        parents = tuple(parents)
        return Tensor(
            data,
            requires_grad=any(p.requires_grad for p in parents),
            dtype=data.dtype,
            _parents=parents,
            _op=op,
        )

    def accumulate(self, grad: np.ndarray) -> None:
        """Add ``grad`` into this tensor's gradient slot."""
        if not self.requires_grad:
            return
        grad = np.asarray(grad, dtype=self.data.dtype)
        if grad.shape != self.data.shape:
            raise ShapeError(f"gradient of shape {grad.shape} for tensor of shape {self.shape}")
        self.grad = grad.copy() if self.grad is None else self.grad + grad

    def zero_grad(self) -> None:
        self.grad = None

    def _topological_order(self) -> List["Tensor"]:
        order: List["Tensor"] = []
        visited = set()
        stack = [(self, False)]
        while stack:
            node, expanded = stack.pop()
            if expanded:
                order.append(node)
                continue
            if id(node) in visited:
                continue
            visited.add(id(node))
            stack.append((node, True))
            for parent in node._parents:
                if id(parent) not in visited and parent.requires_grad:
                    stack.append((parent, False))
        return order

    def backward(self, grad: Optional[np.ndarray] = None) -> None:
        """
        Back-propagate from this tensor.

        Raises:
            ContractError: If no seed gradient is given for a non-scalar tensor
        """
        if grad is None:
            if self.data.size != 1:
                raise ContractError("backward() without a gradient needs a scalar output")
            grad = np.ones_like(self.data)
        self.accumulate(grad)
        for node in reversed(self._topological_order()):
            if node._backward is not None and node.grad is not None:
                node._backward()

    # arithmetic

    def __add__(self, other) -> "Tensor":
        other = other if isinstance(other, Tensor) else Tensor(other, dtype=self.dtype)
        out = Tensor.result(self.data + other.data, (self, other), "add")

        def _backward():
            self.accumulate(_unbroadcast(out.grad, self.shape))
            other.accumulate(_unbroadcast(out.grad, other.shape))

        out._backward = _backward
        return out

    def __neg__(self) -> "Tensor":
        out = Tensor.result(-self.data, (self,), "neg")

        def _backward():
            self.accumulate(-out.grad)

        out._backward = _backward
        return out

    def __sub__(self, other) -> "Tensor":
        other = other if isinstance(other, Tensor) else Tensor(other, dtype=self.dtype)
        return self + (-other)

    def __mul__(self, other) -> "Tensor":
        other = other if isinstance(other, Tensor) else Tensor(other, dtype=self.dtype)
        out = Tensor.result(self.data * other.data, (self, other), "mul")

        def _backward():
            self.accumulate(_unbroadcast(out.grad * other.data, self.shape))
            other.accumulate(_unbroadcast(out.grad * self.data, other.shape))

        out._backward = _backward
        return out

    __radd__ = __add__
    __rmul__ = __mul__

    def __matmul__(self, other: "Tensor") -> "Tensor":
        if self.data.ndim != 2 or other.data.ndim != 2 or self.shape[1] != other.shape[0]:
            raise ShapeError(f"cannot multiply {self.shape} by {other.shape}")
        out = Tensor.result(self.data @ other.data, (self, other), "matmul")

        def _backward():
            self.accumulate(out.grad @ other.data.T)
            other.accumulate(self.data.T @ out.grad)

        out._backward = _backward
        return out

    def sum(self) -> "Tensor":
        out = Tensor.result(np.asarray(self.data.sum(), dtype=self.dtype), (self,), "sum")

        def _backward():
            self.accumulate(np.broadcast_to(out.grad, self.shape))

        out._backward = _backward
        return out

    def mean(self) -> "Tensor":
        return self.sum() * (1.0 / self.data.size)
