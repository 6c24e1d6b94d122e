"""
상태 벡터 시뮬레이션 코어
"""
