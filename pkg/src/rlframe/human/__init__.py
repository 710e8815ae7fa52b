from rlframe.human.session import PlaySession, SessionConfig, serve_session
from rlframe.human.slots import HumanSlot
from rlframe.human.wrapper import HumanPlayEnv, attach_human

__all__ = [
    "HumanPlayEnv",
    "HumanSlot",
    "PlaySession",
    "SessionConfig",
    "attach_human",
    "serve_session",
]
