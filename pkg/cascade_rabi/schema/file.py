from pathlib import Path
from typing import Union

from pydantic import BaseModel


class File(BaseModel):
    """An emitted artifact: CSV/JSON trace, manifest or plotting script."""

    name: str
    content: bytes

    @classmethod
    def from_text(cls, name: str, text: str):
        return cls(name=name, content=text.encode("utf-8"))

    @property
    def text(self) -> str:
        return self.content.decode("utf-8")

    def save(self, path: Union[str, Path]) -> Path:
        path = Path(path)
        path.parent.mkdir(parents=True, exist_ok=True)
        # newline handling stays byte-exact across platforms
        path.write_bytes(self.content)
        return path

    def __str__(self):
        return self.name

    def __repr__(self):
        return f"File(name={self.name})"
