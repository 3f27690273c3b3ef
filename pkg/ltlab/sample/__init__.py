# -*- encoding: utf-8 -*-
"""
 * Project Name: ltlab
 * Created by eniocc
 * Date: 02/05/2023
 * Time: 10:15
 *
 * Edited by: eniocc
 * Date: 02/05/2023
 * Time: 10:15
"""
