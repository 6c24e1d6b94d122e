"""
quditlab - GBS 족 얽힘 상태의 비파괴 판별, 자동 교정, 토모그래피 시뮬레이터
"""

__version__ = "0.1.0"
