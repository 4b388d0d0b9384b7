"""失败报告审阅提示模板"""
