"""公理目录与固定实例"""
